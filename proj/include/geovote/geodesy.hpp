#pragma once

#include <optional>
#include <span>

namespace geovote {

/// Mean Earth radius used for every great-circle distance.
inline constexpr double kEarthRadiusKm = 6371.0;

/// Error assigned to an invalid estimate: half the Earth's circumference
/// by the scoring convention. Slightly above the geometric antipodal
/// distance for kEarthRadiusKm (about 20,015 km).
inline constexpr double kMaxErrorKm = 20039.0;

/// Latitude/longitude in degrees. Latitude must be in [-90, 90]; longitude
/// is wrapped into [-180, 180) on construction.
class GeoPoint {
public:
    GeoPoint(double lat, double lon);

    /// Non-throwing construction; nullopt for non-finite input or a
    /// latitude outside [-90, 90].
    static std::optional<GeoPoint> make(double lat, double lon) noexcept;

    double lat() const noexcept { return lat_; }
    double lon() const noexcept { return lon_; }

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

private:
    struct Unchecked {};
    GeoPoint(double lat, double lon, Unchecked) noexcept : lat_(lat), lon_(lon) {}

    double lat_;
    double lon_;
};

double normalize_longitude(double lon) noexcept;

/// Non-negative distance in kilometers, capped at kMaxErrorKm.
class DistanceKm {
public:
    constexpr DistanceKm() = default;
    explicit DistanceKm(double km);

    constexpr double value() const noexcept { return km_; }

    friend constexpr auto operator<=>(const DistanceKm&, const DistanceKm&) = default;

private:
    double km_ = 0.0;
};

DistanceKm haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept;

struct WeightedPoint {
    GeoPoint point;
    int weight = 1;
};

struct CentroidResult {
    GeoPoint point;
    /// Set when the weighted vector sum cancelled out (norm < 1e-12); the
    /// point is then the first input point.
    bool degenerate = false;
};

/// Weighted mean of the points as 3-D unit vectors, projected back onto
/// the sphere. Throws std::invalid_argument on empty input or weight < 1.
CentroidResult spherical_centroid(std::span<const WeightedPoint> points);

}  // namespace geovote
