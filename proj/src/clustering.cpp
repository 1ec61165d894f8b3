#include "geovote/clustering.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>

namespace geovote {

void ClusterParams::validate() const {
    if (!(eps_km > 0.0) || !std::isfinite(eps_km)) {
        throw std::invalid_argument("eps_km must be a positive finite number");
    }
    if (min_pts < 1) throw std::invalid_argument("min_pts must be >= 1");
}

std::vector<Cluster> dbscan_weighted(std::span<const WeightedEstimate> estimates,
                                     const ClusterParams& params) {
    params.validate();
    const std::size_t n = estimates.size();
    if (n == 0) return {};

    for (const auto& e : estimates) {
        if (e.weight < 1) throw std::invalid_argument("estimate weight must be >= 1: " + e.approach_id);
    }

    std::vector<std::vector<std::size_t>> neighbors(n);
    std::vector<bool> core(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        long density = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || haversine_km(estimates[i].point, estimates[j].point).value() <= params.eps_km) {
                neighbors[i].push_back(j);
                density += estimates[j].weight;
            }
        }
        core[i] = density >= params.min_pts;
    }

    constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> label(n, kUnassigned);
    std::vector<Cluster> clusters;

    for (std::size_t seed = 0; seed < n; ++seed) {
        if (!core[seed] || label[seed] != kUnassigned) continue;

        const std::size_t id = clusters.size();
        clusters.emplace_back();
        label[seed] = id;
        std::deque<std::size_t> frontier{seed};
        while (!frontier.empty()) {
            const std::size_t p = frontier.front();
            frontier.pop_front();
            if (!core[p]) continue;
            for (std::size_t q : neighbors[p]) {
                if (label[q] != kUnassigned) continue;
                label[q] = id;
                frontier.push_back(q);
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] == kUnassigned) continue;
        auto& c = clusters[label[i]];
        c.members.push_back(estimates[i]);
        c.total_weight += estimates[i].weight;
    }
    return clusters;
}

std::optional<Cluster> largest_cluster(std::span<const Cluster> clusters, std::uint64_t rng_seed) {
    if (clusters.empty()) return std::nullopt;

    int best = std::numeric_limits<int>::min();
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (clusters[i].total_weight > best) {
            best = clusters[i].total_weight;
            tied.assign(1, i);
        } else if (clusters[i].total_weight == best) {
            tied.push_back(i);
        }
    }
    if (tied.size() == 1) return clusters[tied.front()];

    // Rejection sampling keeps the pick uniform and identical across
    // standard libraries (std::uniform_int_distribution is not).
    std::mt19937_64 rng(rng_seed);
    const std::uint64_t k = tied.size();
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % k;
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    return clusters[tied[draw % k]];
}

}  // namespace geovote
