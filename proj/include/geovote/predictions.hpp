#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "geovote/geodesy.hpp"

namespace geovote {

/// One approach's answer for one mention. Valid predictions carry a point
/// that is never exactly (0, 0).
struct Prediction {
    std::string mention_id;
    std::optional<GeoPoint> point;

    /// A point at exactly (0, 0) is the invalid-estimate sentinel and never
    /// counts as valid, however the prediction was built.
    bool valid() const noexcept { return point && !(point->lat() == 0.0 && point->lon() == 0.0); }

    static Prediction invalid(std::string mention_id) { return {std::move(mention_id), std::nullopt}; }

    friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// A prediction record as it appears on disk, before validity rules.
struct RawPrediction {
    std::string approach;
    std::string mention_id;
    std::optional<double> lat;
    std::optional<double> lon;
    bool invalid_flag = false;
};

/// Explicit invalid flag, missing or out-of-range coordinates, and the
/// exact (0, 0) sentinel all map to an invalid prediction.
Prediction normalize_invalid(const RawPrediction& raw);

struct PredictionSet {
    std::string approach_id;
    std::map<std::string, Prediction> predictions;  // keyed by mention_id

    /// The stored prediction, or an invalid one when the mention is absent.
    Prediction lookup(const std::string& mention_id) const;

    friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

/// JSON Lines, one record per line:
///   {"approach": A, "mention_id": M, "lat": .., "lon": ..}
///   {"approach": A, "mention_id": M, "invalid": true}
/// Blank lines and lines starting with '#' are ignored. Throws
/// geovote::ParseError on mixed approaches, duplicate mention ids, or a
/// file with no records.
PredictionSet parse_predictions(std::istream& in, const std::string& source = "<stream>");
PredictionSet load_predictions(const std::filesystem::path& path);

/// Records sorted by mention id; invalid predictions emitted with
/// "invalid": true.
void write_predictions(std::ostream& out, const PredictionSet& set);

}  // namespace geovote
