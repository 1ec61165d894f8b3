#include "geovote/geodesy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace geovote {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::array<double, 3> to_unit_vector(const GeoPoint& p) {
    const double lat = p.lat() * kDegToRad;
    const double lon = p.lon() * kDegToRad;
    return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

}  // namespace

double normalize_longitude(double lon) noexcept {
    if (lon >= -180.0 && lon < 180.0) return lon;
    double wrapped = std::fmod(lon + 180.0, 360.0);
    if (wrapped < 0.0) wrapped += 360.0;
    wrapped -= 180.0;
    // fmod can land exactly on +180 after rounding
    return wrapped >= 180.0 ? -180.0 : wrapped;
}

GeoPoint::GeoPoint(double lat, double lon) {
    auto p = make(lat, lon);
    if (!p) {
        throw std::invalid_argument("invalid coordinates (" + std::to_string(lat) + ", " +
                                    std::to_string(lon) + ")");
    }
    *this = *p;
}

std::optional<GeoPoint> GeoPoint::make(double lat, double lon) noexcept {
    if (!std::isfinite(lat) || !std::isfinite(lon)) return std::nullopt;
    if (lat < -90.0 || lat > 90.0) return std::nullopt;
    return GeoPoint(lat, normalize_longitude(lon), Unchecked{});
}

DistanceKm::DistanceKm(double km) {
    if (!(km >= 0.0)) throw std::invalid_argument("distance must be non-negative");
    km_ = std::min(km, kMaxErrorKm);
}

DistanceKm haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept {
    const double lat1 = a.lat() * kDegToRad;
    const double lat2 = b.lat() * kDegToRad;
    const double sdlat = std::sin(0.5 * (lat2 - lat1));
    const double sdlon = std::sin(0.5 * (b.lon() - a.lon()) * kDegToRad);
    const double h = sdlat * sdlat + std::cos(lat1) * std::cos(lat2) * sdlon * sdlon;
    return DistanceKm(2.0 * kEarthRadiusKm * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0))));
}

CentroidResult spherical_centroid(std::span<const WeightedPoint> points) {
    if (points.empty()) throw std::invalid_argument("centroid of an empty point list");

    std::array<double, 3> sum{};
    for (const auto& wp : points) {
        if (wp.weight < 1) throw std::invalid_argument("centroid weight must be >= 1");
        const auto v = to_unit_vector(wp.point);
        for (int k = 0; k < 3; ++k) sum[k] += wp.weight * v[k];
    }

    const double norm = std::sqrt(sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]);
    if (norm < 1e-12) return {points.front().point, true};

    const double lat = std::atan2(sum[2], std::hypot(sum[0], sum[1])) * kRadToDeg;
    const double lon = std::atan2(sum[1], sum[0]) * kRadToDeg;
    return {GeoPoint(std::clamp(lat, -90.0, 90.0), lon), false};
}

}  // namespace geovote
