#include <doctest.h>

#include <cmath>
#include <sstream>

#include "geovote/analysis.hpp"
#include "geovote/corpus.hpp"

using namespace geovote;

namespace {

// A always at gold, B always ~1000 km east of it, C never valid.
std::vector<Dataset> two_approach_fixture() {
    Dataset ds;
    ds.corpus.name = "fx";
    PredictionSet a{"A", {}}, b{"B", {}}, c{"C", {}};
    for (int i = 0; i < 12; ++i) {
        const std::string id = "m" + std::to_string(i);
        const double lat = -50.0 + 8.0 * i, lon = -120.0 + 17.0 * i;
        ds.corpus.mentions.push_back({id, "d", "X", {0, 1}, GeoPoint(lat, lon), std::nullopt, std::nullopt});
        a.predictions[id] = {id, GeoPoint(lat, lon)};
        const double dlon = 1000.0 / (111.19492664 * std::cos(lat * 3.14159265358979323846 / 180.0));
        b.predictions[id] = {id, GeoPoint(lat, normalize_longitude(lon + dlon))};
        c.predictions[id] = Prediction::invalid(id);
    }
    ds.predictions = {a, b, c};
    return {ds};
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("ablation on the two-approach fixture") {
    const auto datasets = two_approach_fixture();
    const std::vector<std::string> ids = {"A", "B"};
    const auto results = ablate(EnsembleConfig::equal_weights(ids), datasets);
    REQUIRE(results.size() == 2);
    CHECK(results[0].approach_id == "A");
    CHECK(results[1].approach_id == "B");
    // basic: no cluster, fallback to A. Without A only B remains.
    CHECK(results[0].delta_accuracy == 1.0);
    double me_b = 0;
    for (const auto& m : datasets[0].corpus.mentions) {
        me_b += haversine_km(m.gold, *datasets[0].predictions[1].predictions.at(m.mention_id).point).value();
    }
    me_b /= static_cast<double>(datasets[0].corpus.mentions.size());
    CHECK(me_b > 900.0);
    CHECK(results[0].delta_me == doctest::Approx(-me_b).epsilon(1e-12));
    CHECK(results[0].delta_auc < 0.0);
    CHECK(results[1].delta_accuracy >= 0.0);
    CHECK(results[1].delta_accuracy == 0.0);
    CHECK(results[1].delta_me == 0.0);
}

TEST_CASE("removing an all-invalid approach changes nothing") {
    const auto datasets = two_approach_fixture();
    const std::vector<std::string> ids = {"A", "B", "C"};
    const auto results = ablate(EnsembleConfig::equal_weights(ids), datasets);
    REQUIRE(results.size() == 3);
    CHECK(results[2].approach_id == "C");
    CHECK(results[2].delta_accuracy == 0.0);
    CHECK(results[2].delta_auc == 0.0);
    CHECK(results[2].delta_me == 0.0);
    for (const auto& r : results) {
        CHECK(r.delta_accuracy >= -1.0);
        CHECK(r.delta_accuracy <= 1.0);
    }
}

TEST_CASE("ablation needs two approaches and is deterministic") {
    const auto datasets = two_approach_fixture();
    const std::vector<std::string> one = {"A"};
    CHECK_THROWS_AS(ablate(EnsembleConfig::equal_weights(one), datasets), std::invalid_argument);

    const auto config = EnsembleConfig::default_ensemble();
    const auto r1 = ablate(config, datasets);
    const auto r2 = ablate(config, datasets);
    CHECK(r1.size() == config.approaches.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].delta_accuracy == r2[i].delta_accuracy);
        CHECK(r1[i].delta_me == r2[i].delta_me);
    }
}

TEST_CASE("sweep values") {
    const auto eps = default_sweep_values(SweepParameter::eps_km);
    CHECK(eps.size() == 27);
    CHECK(eps.front() == 1.0);
    CHECK(eps.back() == 781.0);
    const auto mp = default_sweep_values(SweepParameter::min_pts);
    CHECK(mp.size() == 11);
    CHECK(mp.back() == 11.0);
    CHECK(sweep_values(1, 800, 30) == eps);
    CHECK(sweep_values(0.1, 0.3, 0.1).size() == 3);
    CHECK_THROWS(sweep_values(1, 10, 0));
    CHECK_THROWS(sweep_values(10, 1, 1));
}

TEST_CASE("sweep parameter names") {
    CHECK(parse_sweep_parameter("eps") == SweepParameter::eps_km);
    CHECK(parse_sweep_parameter("min_pts") == SweepParameter::min_pts);
    CHECK_THROWS(parse_sweep_parameter("radius"));
}

TEST_CASE("sweep points equal direct evaluations") {
    const auto datasets = two_approach_fixture();
    const std::vector<std::string> ids = {"A", "B"};
    const auto config = EnsembleConfig::equal_weights(ids);

    const std::vector<double> eps = {5, 500, 1500};
    const auto curve = sweep(config, SweepParameter::eps_km, eps, datasets);
    REQUIRE(curve.points.size() == 3);
    for (const auto& p : curve.points) {
        auto c = config;
        c.params.eps_km = p.value;
        const auto reports = evaluate_ensemble("voting", c, datasets);
        const auto macro = macro_average(reports);
        CHECK(p.accuracy == macro.accuracy_at_161);
        CHECK(p.auc == macro.auc);
        CHECK(p.mean_error_km == macro.mean_error_km);
    }
    // eps 1500 joins A and B; the centroid sits ~500 km off
    CHECK(curve.points[0].accuracy == 1.0);
    CHECK(curve.points[2].accuracy == 0.0);

    const std::vector<double> single = {2};
    const auto one = sweep(config, SweepParameter::min_pts, single, datasets);
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0].accuracy == macro_average(evaluate_ensemble("voting", config, datasets)).accuracy_at_161);
}

TEST_CASE("sweep rejects bad values") {
    const auto datasets = two_approach_fixture();
    const auto config = EnsembleConfig::default_ensemble();
    const std::vector<double> zero = {0, 10};
    CHECK_THROWS(sweep(config, SweepParameter::eps_km, zero, datasets));
    const std::vector<double> frac = {1.5};
    CHECK_THROWS(sweep(config, SweepParameter::min_pts, frac, datasets));
    const std::vector<double> down = {3, 2};
    CHECK_THROWS(sweep(config, SweepParameter::min_pts, down, datasets));
    CHECK_THROWS(sweep(config, SweepParameter::min_pts, {}, datasets));
}

TEST_CASE("evaluate_ensemble ignores prediction sets outside the config") {
    const auto datasets = two_approach_fixture();
    const std::vector<std::string> ids = {"B"};
    const auto reports = evaluate_ensemble("voting", EnsembleConfig::equal_weights(ids), datasets);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].accuracy_at_161 == 0.0);
}

TEST_CASE("sweep csv is long format") {
    SweepCurve curve{SweepParameter::min_pts, {{1, 0.5, 0.25, 10}}};
    std::ostringstream out;
    write_sweep_csv(out, curve);
    const auto s = out.str();
    CHECK(s.rfind("parameter,value,metric,score\n", 0) == 0);
    CHECK(s.find("min_pts,1.000000,accuracy_at_161,0.500000\n") != std::string::npos);
}

}
