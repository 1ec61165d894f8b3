#include <doctest.h>

#include <random>
#include <sstream>

#include "geovote/errors.hpp"
#include "geovote/predictions.hpp"

using namespace geovote;

TEST_SUITE("predictions") {

TEST_CASE("normalize_invalid") {
    CHECK_FALSE(normalize_invalid({"A", "m", 0.0, 0.0, false}).valid());
    CHECK(normalize_invalid({"A", "m", 0.0001, 0.0, false}).valid());
    CHECK(normalize_invalid({"A", "m", 0.0, -0.0001, false}).valid());
    CHECK_FALSE(normalize_invalid({"A", "m", 95.0, 10.0, false}).valid());
    CHECK_FALSE(normalize_invalid({"A", "m", 10.0, 181.0, false}).valid());
    CHECK_FALSE(normalize_invalid({"A", "m", 10.0, 10.0, true}).valid());
    CHECK_FALSE(normalize_invalid({"A", "m", std::nullopt, 10.0, false}).valid());
    const auto p = normalize_invalid({"A", "m", 10.0, 180.0, false});
    REQUIRE(p.valid());
    CHECK(p.point->lon() == -180.0);
    CHECK(p.mention_id == "m");
}

TEST_CASE("a (0,0) point built in code is never valid") {
    const Prediction p{"m", GeoPoint(0, 0)};
    CHECK_FALSE(p.valid());
}

TEST_CASE("parse a small file") {
    std::istringstream in(R"(# header comment
{"approach": "GENRE", "mention_id": "m1", "lat": 48.85, "lon": 2.35}
{"approach": "GENRE", "mention_id": "m2", "lat": 0, "lon": 0}

{"approach": "GENRE", "mention_id": "m3", "invalid": true}
)");
    const auto set = parse_predictions(in);
    CHECK(set.approach_id == "GENRE");
    REQUIRE(set.predictions.size() == 3);
    CHECK(set.predictions.at("m1").valid());
    CHECK_FALSE(set.predictions.at("m2").valid());
    CHECK_FALSE(set.predictions.at("m3").valid());
    CHECK_FALSE(set.lookup("absent").valid());
}

TEST_CASE("three valid records") {
    std::istringstream in(R"({"approach": "A", "mention_id": "1", "lat": 1, "lon": 1}
{"approach": "A", "mention_id": "2", "lat": 2, "lon": 2}
{"approach": "A", "mention_id": "3", "lat": 3, "lon": 3})");
    CHECK(parse_predictions(in).predictions.size() == 3);
}

TEST_CASE("parse errors") {
    SUBCASE("header only") {
        std::istringstream in("# nothing here\n");
        CHECK_THROWS_AS(parse_predictions(in), ParseError);
    }
    SUBCASE("mixed approaches") {
        std::istringstream in(R"({"approach": "A", "mention_id": "1", "lat": 1, "lon": 1}
{"approach": "B", "mention_id": "2", "lat": 2, "lon": 2})");
        CHECK_THROWS_AS(parse_predictions(in), ParseError);
    }
    SUBCASE("duplicate mention names the line") {
        std::istringstream in(R"({"approach": "A", "mention_id": "1", "lat": 1, "lon": 1}
{"approach": "A", "mention_id": "1", "lat": 2, "lon": 2})");
        try {
            parse_predictions(in, "f.jsonl");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("f.jsonl:2") != std::string::npos);
        }
    }
    SUBCASE("missing field") {
        std::istringstream in(R"({"approach": "A", "lat": 1, "lon": 1})");
        CHECK_THROWS_AS(parse_predictions(in), ParseError);
    }
    SUBCASE("not json") {
        std::istringstream in("lat,lon\n");
        CHECK_THROWS_AS(parse_predictions(in), ParseError);
    }
}

TEST_CASE("write then parse round-trips random sets") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180), u(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        PredictionSet set{"approach" + std::to_string(trial % 7), {}};
        const int n = static_cast<int>(u(rng) * 30) + 1;
        for (int i = 0; i < n; ++i) {
            const std::string id = "m" + std::to_string(i);
            const double r = u(rng);
            if (r < 0.2) {
                set.predictions[id] = Prediction::invalid(id);
            } else {
                set.predictions[id] = {id, GeoPoint(lat(rng), lon(rng))};
            }
        }
        std::stringstream ss;
        write_predictions(ss, set);
        CHECK(parse_predictions(ss) == set);
    }
}

TEST_CASE("(0,0) comes back as an explicit invalid record") {
    PredictionSet set{"A", {{"m", {"m", GeoPoint(0, 0)}}}};
    std::stringstream ss;
    write_predictions(ss, set);
    CHECK(ss.str().find("\"invalid\":true") != std::string::npos);
    const auto back = parse_predictions(ss);
    CHECK_FALSE(back.predictions.at("m").valid());
}

}
