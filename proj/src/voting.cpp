#include "geovote/voting.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "geovote/corpus.hpp"
#include "geovote/errors.hpp"
#include "text.hpp"

namespace geovote {

using nlohmann::json;

EnsembleConfig EnsembleConfig::default_ensemble() {
    EnsembleConfig c;
    c.approaches = {{"GENRE", 3}, {"BLINK", 2}, {"LUKE", 2}, {"CamCoder", 1},
                    {"SHS", 1},   {"CBH", 1},   {"EdinburghGeoparser", 1}};
    c.params = {10.0, 2};
    c.rng_seed = 0;
    return c;
}

EnsembleConfig EnsembleConfig::equal_weights(std::span<const std::string> approach_ids) {
    EnsembleConfig c;
    for (const auto& id : approach_ids) c.approaches.push_back({id, 1});
    c.params = {10.0, 2};
    return c;
}

void EnsembleConfig::validate() const {
    std::set<std::string> seen;
    for (const auto& a : approaches) {
        if (a.id.empty()) throw ConfigError("empty approach id");
        if (a.weight < 1) throw ConfigError("approach weight must be >= 1", a.id);
        if (!seen.insert(a.id).second) throw ConfigError("duplicate approach id", a.id);
    }
    params.validate();
}

std::optional<int> EnsembleConfig::weight_of(const std::string& approach_id) const {
    for (const auto& a : approaches) {
        if (a.id == approach_id) return a.weight;
    }
    return std::nullopt;
}

EnsembleConfig parse_ensemble_config(std::istream& in, const std::string& source) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(source, 0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError(source, 0, "ensemble config must be a JSON object");

    EnsembleConfig c = EnsembleConfig::default_ensemble();
    try {
        if (doc.contains("approaches")) {
            c.approaches.clear();
            for (const auto& a : doc.at("approaches")) {
                c.approaches.push_back({a.at("id").get<std::string>(), a.value("weight", 1)});
            }
        }
        if (doc.contains("eps_km")) c.params.eps_km = doc.at("eps_km").get<double>();
        if (doc.contains("min_pts")) c.params.min_pts = doc.at("min_pts").get<int>();
        if (doc.contains("rng_seed")) c.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ParseError(source, 0, std::string("bad ensemble config field: ") + e.what());
    }
    c.validate();
    return c;
}

EnsembleConfig load_ensemble_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open ensemble config");
    return parse_ensemble_config(in, path.string());
}

void write_ensemble_config(std::ostream& out, const EnsembleConfig& config) {
    json doc;
    doc["approaches"] = json::array();
    for (const auto& a : config.approaches) doc["approaches"].push_back({{"id", a.id}, {"weight", a.weight}});
    doc["eps_km"] = config.params.eps_km;
    doc["min_pts"] = config.params.min_pts;
    doc["rng_seed"] = config.rng_seed;
    out << doc.dump(2) << '\n';
}

const char* to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::cluster_centroid: return "cluster_centroid";
        case Provenance::fallback_first_valid: return "fallback_first_valid";
    }
    return "unknown";
}

Resolution Resolution::from_prediction(const Prediction& p) {
    if (!p.valid()) return invalid();
    return {p.point, std::nullopt, 1};
}

Resolution vote(const std::map<std::string, Prediction>& estimates_by_approach, const EnsembleConfig& config) {
    for (const auto& [approach, _] : estimates_by_approach) {
        if (!config.contains(approach)) throw ConfigError("prediction from approach not in ensemble config", approach);
    }

    std::vector<WeightedEstimate> estimates;
    for (const auto& a : config.approaches) {
        auto it = estimates_by_approach.find(a.id);
        if (it == estimates_by_approach.end() || !it->second.valid()) continue;
        estimates.push_back({a.id, *it->second.point, a.weight});
    }
    if (estimates.empty()) return Resolution::invalid();

    const auto clusters = dbscan_weighted(estimates, config.params);
    if (auto winner = largest_cluster(clusters, config.rng_seed)) {
        std::vector<WeightedPoint> points;
        points.reserve(winner->members.size());
        for (const auto& m : winner->members) points.push_back({m.point, m.weight});
        return {spherical_centroid(points).point, Provenance::cluster_centroid, winner->total_weight};
    }

    const auto& first = estimates.front();
    return {first.point, Provenance::fallback_first_valid, first.weight};
}

std::uint64_t mention_seed(std::uint64_t rng_seed, const std::string& mention_id) noexcept {
    return detail::splitmix64(rng_seed ^ detail::fnv1a64(mention_id));
}

std::map<std::string, Resolution> resolve_corpus(const Corpus& corpus, std::span<const PredictionSet> predictions,
                                                 const EnsembleConfig& config) {
    config.validate();
    std::set<std::string> approaches;
    for (const auto& set : predictions) {
        if (!approaches.insert(set.approach_id).second) {
            throw ConfigError("duplicate prediction set for approach", set.approach_id);
        }
        if (!config.contains(set.approach_id)) {
            throw ConfigError("prediction set for approach not in ensemble config", set.approach_id);
        }
    }

    std::map<std::string, Resolution> out;
    EnsembleConfig per_mention = config;
    for (const auto& m : corpus.mentions) {
        std::map<std::string, Prediction> estimates;
        for (const auto& set : predictions) estimates.emplace(set.approach_id, set.lookup(m.mention_id));
        per_mention.rng_seed = mention_seed(config.rng_seed, m.mention_id);
        out.emplace(m.mention_id, vote(estimates, per_mention));
    }
    return out;
}

}  // namespace geovote
