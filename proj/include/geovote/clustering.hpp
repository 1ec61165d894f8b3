#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geovote/geodesy.hpp"

namespace geovote {

/// One approach's coordinate guess. A weight of w counts as w coincident
/// points during clustering.
struct WeightedEstimate {
    std::string approach_id;
    GeoPoint point;
    int weight = 1;
};

struct Cluster {
    std::vector<WeightedEstimate> members;  // input order
    int total_weight = 0;
};

struct ClusterParams {
    double eps_km = 10.0;
    int min_pts = 2;

    /// Throws std::invalid_argument unless eps_km > 0 and min_pts >= 1.
    void validate() const;
};

/// DBSCAN with haversine distance where each estimate stands for `weight`
/// replicated points. Neighborhoods are closed balls (distance <= eps)
/// that include the query estimate itself. Border estimates reachable from
/// several clusters go to the cluster discovered first when scanning cores
/// in input order. Noise estimates appear in no cluster.
std::vector<Cluster> dbscan_weighted(std::span<const WeightedEstimate> estimates,
                                     const ClusterParams& params);

/// Cluster with the largest total weight. Ties are broken uniformly at
/// random from a generator seeded with `rng_seed`, so equal seeds give
/// equal picks.
std::optional<Cluster> largest_cluster(std::span<const Cluster> clusters, std::uint64_t rng_seed = 0);

}  // namespace geovote
