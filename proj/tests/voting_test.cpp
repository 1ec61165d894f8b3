#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "geovote/corpus.hpp"
#include "geovote/errors.hpp"
#include "geovote/voting.hpp"
#include "oracles.hpp"

using namespace geovote;

namespace {

Prediction at(double lat, double lon) { return {"m", GeoPoint(lat, lon)}; }
Prediction none() { return Prediction::invalid("m"); }

std::map<std::string, Prediction> all_invalid() {
    std::map<std::string, Prediction> m;
    for (const auto& a : EnsembleConfig::default_ensemble().approaches) m[a.id] = none();
    return m;
}

}  // namespace

TEST_SUITE("voting") {

TEST_CASE("default ensemble") {
    const auto c = EnsembleConfig::default_ensemble();
    const std::vector<ApproachWeight> want = {{"GENRE", 3}, {"BLINK", 2}, {"LUKE", 2}, {"CamCoder", 1},
                                              {"SHS", 1},   {"CBH", 1},   {"EdinburghGeoparser", 1}};
    CHECK(c.approaches == want);
    CHECK(c.params.eps_km == 10.0);
    CHECK(c.params.min_pts == 2);
    CHECK(c.rng_seed == 0);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config validation") {
    auto c = EnsembleConfig::default_ensemble();
    c.approaches.push_back({"GENRE", 1});
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = EnsembleConfig::default_ensemble();
    c.approaches[1].weight = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = EnsembleConfig::default_ensemble();
    c.params.eps_km = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("config file round-trips and keeps defaults for missing keys") {
    auto c = EnsembleConfig::default_ensemble();
    c.approaches.pop_back();
    c.params = {25.5, 3};
    c.rng_seed = 42;
    std::stringstream ss;
    write_ensemble_config(ss, c);
    const auto back = parse_ensemble_config(ss);
    CHECK(back.approaches == c.approaches);
    CHECK(back.params.eps_km == 25.5);
    CHECK(back.params.min_pts == 3);
    CHECK(back.rng_seed == 42);

    std::istringstream partial(R"({"eps_km": 50})");
    const auto p = parse_ensemble_config(partial);
    CHECK(p.approaches == EnsembleConfig::default_ensemble().approaches);
    CHECK(p.params.eps_km == 50);

    std::istringstream bad(R"({"approaches": [{"id": "A"}, {"id": "A"}]})");
    CHECK_THROWS_AS(parse_ensemble_config(bad), ConfigError);
    std::istringstream garbage("{not json");
    CHECK_THROWS_AS(parse_ensemble_config(garbage), ParseError);
}

TEST_CASE("shipped default config file matches the built-in default") {
    const auto c = load_ensemble_config(GEOVOTE_DATA_DIR "/default_ensemble.json");
    CHECK(c.approaches == EnsembleConfig::default_ensemble().approaches);
    CHECK(c.params.eps_km == 10.0);
    CHECK(c.params.min_pts == 2);
}

TEST_CASE("GENRE alone resolves through its own cluster") {
    auto est = all_invalid();
    est["GENRE"] = at(10, 10);
    const auto r = vote(est, EnsembleConfig::default_ensemble());
    REQUIRE(r.resolved());
    CHECK(r.point->lat() == doctest::Approx(10).epsilon(1e-12));
    CHECK(r.point->lon() == doctest::Approx(10).epsilon(1e-12));
    CHECK(r.provenance == Provenance::cluster_centroid);
    CHECK(r.winning_weight == 3);
}

TEST_CASE("no cluster falls back to the first valid approach in config order") {
    auto est = all_invalid();
    est["SHS"] = at(20, 20);
    est["CBH"] = at(40, 40);
    est["EdinburghGeoparser"] = at(60, 60);

    SUBCASE("CamCoder at the (0,0) sentinel does not count") {
        est["CamCoder"] = at(0, 0);
        const auto r = vote(est, EnsembleConfig::default_ensemble());
        REQUIRE(r.resolved());
        CHECK(*r.point == GeoPoint(20, 20));
        CHECK(r.provenance == Provenance::fallback_first_valid);
        CHECK(r.winning_weight == 1);
    }
    SUBCASE("CamCoder valid") {
        est["CamCoder"] = at(0.5, 0.5);
        const auto r = vote(est, EnsembleConfig::default_ensemble());
        REQUIRE(r.resolved());
        CHECK(*r.point == GeoPoint(0.5, 0.5));
        CHECK(r.provenance == Provenance::fallback_first_valid);
    }

    // Brute-force check that no cluster exists in this setup.
    std::vector<WeightedEstimate> we = {{"CamCoder", {0.5, 0.5}, 1}, {"SHS", {20, 20}, 1}, {"CBH", {40, 40}, 1},
                                        {"EdinburghGeoparser", {60, 60}, 1}};
    CHECK(oracle::replicated_dbscan(we, 10, 2).empty());
}

TEST_CASE("all invalid gives an invalid resolution") {
    const auto r = vote(all_invalid(), EnsembleConfig::default_ensemble());
    CHECK_FALSE(r.resolved());
    CHECK_FALSE(r.provenance.has_value());
    CHECK(r.winning_weight == 0);
    CHECK_FALSE(vote({}, EnsembleConfig::default_ensemble()).resolved());
}

TEST_CASE("a heavier agreeing group beats a lone GENRE") {
    auto est = all_invalid();
    est["GENRE"] = at(50, 8);
    est["BLINK"] = at(48.85, 2.35);
    est["LUKE"] = at(48.86, 2.36);
    est["SHS"] = at(48.84, 2.34);

    std::vector<WeightedEstimate> we = {{"GENRE", {50, 8}, 3},
                                        {"BLINK", {48.85, 2.35}, 2},
                                        {"LUKE", {48.86, 2.36}, 2},
                                        {"SHS", {48.84, 2.34}, 1}};
    const auto clusters = oracle::replicated_dbscan(we, 10, 2);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[1] == std::set<std::string>{"BLINK", "LUKE", "SHS"});

    const auto r = vote(est, EnsembleConfig::default_ensemble());
    REQUIRE(r.resolved());
    CHECK(r.provenance == Provenance::cluster_centroid);
    CHECK(r.winning_weight == 5);
    CHECK(haversine_km(*r.point, {48.85, 2.35}).value() < 5.0);
}

TEST_CASE("unknown approach is a configuration error naming it") {
    auto est = all_invalid();
    est["Nominatim"] = at(1, 1);
    try {
        vote(est, EnsembleConfig::default_ensemble());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.approach_id() == "Nominatim");
    }
}

TEST_CASE("vote properties on random instances") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> lat(-60, 60), lon(-170, 170), off(-0.2, 0.2), u(0, 1);
    const auto config = EnsembleConfig::default_ensemble();

    for (int trial = 0; trial < 500; ++trial) {
        const double clat = lat(rng), clon = lon(rng);
        std::vector<std::pair<std::string, Prediction>> entries;
        for (const auto& a : config.approaches) {
            if (u(rng) < 0.25) {
                entries.emplace_back(a.id, none());
            } else {
                entries.emplace_back(a.id, at(clat + off(rng), clon + off(rng)));
            }
        }
        entries[0].second = at(clat + off(rng), clon + off(rng));  // GENRE valid

        std::map<std::string, Prediction> forward(entries.begin(), entries.end());
        std::map<std::string, Prediction> backward;
        for (auto it = entries.rbegin(); it != entries.rend(); ++it) backward.insert(*it);

        const auto r = vote(forward, config);
        REQUIRE(r.resolved());
        CHECK(r.winning_weight >= 3);
        const auto r2 = vote(backward, config);
        CHECK(*r.point == *r2.point);
        CHECK(r.winning_weight == r2.winning_weight);

        // Loose sanity bound: no winning member lies far from the result.
        const double bound = config.params.eps_km * static_cast<double>(config.approaches.size());
        std::vector<WeightedEstimate> valid;
        for (const auto& a : config.approaches) {
            if (forward[a.id].valid()) valid.push_back({a.id, *forward[a.id].point, a.weight});
        }
        for (const auto& c : dbscan_weighted(valid, config.params)) {
            if (c.total_weight != r.winning_weight) continue;
            for (const auto& m : c.members) CHECK(haversine_km(m.point, *r.point).value() <= bound);
        }
    }
}

TEST_CASE("uniform weight scaling keeps the winner when min_pts is 1") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> lat(-60, 60), lon(-170, 170), off(-0.3, 0.3);
    auto base = EnsembleConfig::default_ensemble();
    base.params.min_pts = 1;

    for (int trial = 0; trial < 300; ++trial) {
        const double clat = lat(rng), clon = lon(rng);
        std::map<std::string, Prediction> est;
        for (const auto& a : base.approaches) est[a.id] = at(clat + off(rng), clon + off(rng));

        auto scaled = base;
        for (auto& a : scaled.approaches) a.weight *= 3;
        const auto r1 = vote(est, base);
        const auto r2 = vote(est, scaled);
        REQUIRE(r1.resolved());
        CHECK(r2.winning_weight == 3 * r1.winning_weight);
        CHECK(haversine_km(*r1.point, *r2.point).value() < 1e-6);
    }
}

TEST_CASE("resolve_corpus") {
    const auto config = EnsembleConfig::default_ensemble();

    SUBCASE("empty corpus") {
        Corpus corpus;
        CHECK(resolve_corpus(corpus, {}, config).empty());
    }
    SUBCASE("single mention composes with vote") {
        Corpus corpus{"c", {{"m1", "d1", "Here", {0, 4}, {10, 10}, std::nullopt, std::nullopt}}, {}};
        const std::vector<PredictionSet> sets = {{"GENRE", {{"m1", {"m1", GeoPoint(10, 10)}}}},
                                                 {"BLINK", {{"m1", Prediction::invalid("m1")}}}};
        const auto out = resolve_corpus(corpus, sets, config);
        REQUIRE(out.size() == 1);
        CHECK(out.at("m1").winning_weight == 3);
        CHECK(out.at("m1").provenance == Provenance::cluster_centroid);
    }
    SUBCASE("missing mentions are invalid for that approach") {
        Corpus corpus{"c",
                      {{"m1", "d1", "A", {0, 1}, {10, 10}, std::nullopt, std::nullopt},
                       {"m2", "d1", "B", {2, 3}, {20, 20}, std::nullopt, std::nullopt}},
                      {}};
        const std::vector<PredictionSet> sets = {{"CamCoder", {{"m1", {"m1", GeoPoint(10, 10)}}}}};
        const auto out = resolve_corpus(corpus, sets, config);
        CHECK(out.at("m1").provenance == Provenance::fallback_first_valid);
        CHECK_FALSE(out.at("m2").resolved());
    }
    SUBCASE("duplicate or unknown prediction sets") {
        Corpus corpus;
        const std::vector<PredictionSet> dup = {{"GENRE", {}}, {"GENRE", {}}};
        CHECK_THROWS_AS(resolve_corpus(corpus, dup, config), ConfigError);
        const std::vector<PredictionSet> unknown = {{"DCA", {}}};
        CHECK_THROWS_AS(resolve_corpus(corpus, unknown, config), ConfigError);
    }
}

TEST_CASE("mention seeds are stable and distinct") {
    CHECK(mention_seed(0, "a") == mention_seed(0, "a"));
    CHECK(mention_seed(0, "a") != mention_seed(0, "b"));
    CHECK(mention_seed(0, "a") != mention_seed(1, "a"));
}

}
