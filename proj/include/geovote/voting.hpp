#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geovote/clustering.hpp"
#include "geovote/geodesy.hpp"
#include "geovote/predictions.hpp"

namespace geovote {

struct Corpus;

struct ApproachWeight {
    std::string id;
    int weight = 1;

    friend bool operator==(const ApproachWeight&, const ApproachWeight&) = default;
};

/// Ordered approaches with vote counts plus DBSCAN parameters. The order
/// drives the fallback traversal when no cluster forms.
struct EnsembleConfig {
    std::vector<ApproachWeight> approaches;
    ClusterParams params;
    std::uint64_t rng_seed = 0;

    /// GENRE 3, BLINK 2, LUKE 2, CamCoder 1, SHS 1, CBH 1,
    /// EdinburghGeoparser 1; eps 10 km, min_pts 2, seed 0.
    static EnsembleConfig default_ensemble();

    /// Every listed approach with one vote; eps 10 km, min_pts 2.
    static EnsembleConfig equal_weights(std::span<const std::string> approach_ids);

    /// Throws ConfigError on duplicate or empty ids and non-positive weights;
    /// std::invalid_argument on bad cluster parameters.
    void validate() const;

    std::optional<int> weight_of(const std::string& approach_id) const;
    bool contains(const std::string& approach_id) const { return weight_of(approach_id).has_value(); }
};

/// Keys: approaches (array of {id, weight}), eps_km, min_pts, rng_seed.
/// Missing keys keep the defaults of default_ensemble().
EnsembleConfig parse_ensemble_config(std::istream& in, const std::string& source = "<stream>");
EnsembleConfig load_ensemble_config(const std::filesystem::path& path);
void write_ensemble_config(std::ostream& out, const EnsembleConfig& config);

enum class Provenance { cluster_centroid, fallback_first_valid };

struct Resolution {
    std::optional<GeoPoint> point;  // present iff resolved
    std::optional<Provenance> provenance;
    int winning_weight = 0;

    bool resolved() const noexcept { return point.has_value(); }

    static Resolution invalid() { return {}; }
    /// Scores a single approach's prediction as if it were a system.
    static Resolution from_prediction(const Prediction& p);
};

const char* to_string(Provenance p) noexcept;

/// Cluster the valid estimates, take the centroid of the heaviest cluster;
/// without clusters, the first valid estimate in config order; otherwise
/// invalid. Throws ConfigError for an approach absent from the config.
Resolution vote(const std::map<std::string, Prediction>& estimates_by_approach, const EnsembleConfig& config);

/// Per-mention seed derived from the config seed and the mention id.
std::uint64_t mention_seed(std::uint64_t rng_seed, const std::string& mention_id) noexcept;

/// Votes every corpus mention. Mentions absent from a prediction set count
/// as invalid for that approach. Throws ConfigError for duplicate
/// prediction sets or sets whose approach is not configured.
std::map<std::string, Resolution> resolve_corpus(const Corpus& corpus, std::span<const PredictionSet> predictions,
                                                 const EnsembleConfig& config);

}  // namespace geovote
