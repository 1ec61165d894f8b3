#pragma once

// Seeded generators for small clustering instances.

#include <random>
#include <string>
#include <vector>

#include "geovote/clustering.hpp"

namespace geovote::testing {

/// Up to `max_n` estimates scattered within ~`spread_deg` of a random
/// center so that eps values of 5-50 km produce non-trivial structure.
inline std::vector<WeightedEstimate> random_estimates(std::mt19937_64& rng, int max_n = 8, int max_weight = 3,
                                                      double spread_deg = 0.4) {
    std::uniform_int_distribution<int> count(0, max_n), weight(1, max_weight);
    std::uniform_real_distribution<double> lat(-70, 70), lon(-180, 180), off(-spread_deg, spread_deg);
    const double clat = lat(rng), clon = lon(rng);
    std::vector<WeightedEstimate> out;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        out.push_back({"a" + std::to_string(i), GeoPoint(clat + off(rng), clon + off(rng)), weight(rng)});
    }
    return out;
}

}  // namespace geovote::testing
