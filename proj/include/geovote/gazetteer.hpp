#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "geovote/corpus.hpp"
#include "geovote/geodesy.hpp"
#include "geovote/predictions.hpp"

namespace geovote {

struct GazetteerEntry {
    std::int64_t geonames_id = 0;
    std::string name;
    std::string ascii_name;
    std::vector<std::string> alternate_names;
    GeoPoint point{0.0, 0.0};
    char feature_class = '\0';
    std::string feature_code;
    std::int64_t population = 0;
};

/// Immutable GeoNames subset with a case-folded exact-name index over
/// name, ascii_name and every alternate name.
class Gazetteer {
public:
    Gazetteer() = default;
    /// Later entries replace earlier ones with the same geonames_id.
    explicit Gazetteer(std::vector<GazetteerEntry> entries);

    std::size_t size() const noexcept { return entries_.size(); }
    const GazetteerEntry* find(std::int64_t geonames_id) const;

    /// Entries whose folded names equal the folded, trimmed surface,
    /// ordered by descending population then ascending geonames_id.
    std::vector<const GazetteerEntry*> candidates(std::string_view surface) const;

private:
    std::map<std::int64_t, GazetteerEntry> entries_;
    std::unordered_map<std::string, std::vector<std::int64_t>> by_name_;
};

struct GazetteerLoad {
    Gazetteer gazetteer;
    std::size_t rows_seen = 0;
    std::size_t rows_skipped = 0;
    std::vector<std::string> warnings;
};

/// GeoNames main export (tab-separated, no header). Columns used: 0 id,
/// 1 name, 2 asciiname, 3 alternatenames, 4 lat, 5 lon, 6 feature class,
/// 7 feature code, 14 population (empty means 0). Malformed rows are
/// skipped; duplicate ids keep the last row. Both produce a warning.
GazetteerLoad parse_geonames_tsv(std::istream& in, const std::string& source = "<stream>");
GazetteerLoad load_geonames_tsv(const std::filesystem::path& path);

std::vector<GazetteerEntry> lookup_candidates(const Gazetteer& gaz, std::string_view surface);

/// Largest-population candidate; invalid when the name is unknown.
Prediction population_resolve(const Gazetteer& gaz, std::string_view surface);

/// Runs population_resolve over a corpus as a scoreable approach.
PredictionSet population_baseline(const Corpus& corpus, const Gazetteer& gaz,
                                  std::string approach_id = "PopulationHeuristics");

enum class PlaceCategory { AdminUnit, POI, NaturalFeature, TrafficWay, Unknown };

inline constexpr std::array<PlaceCategory, 5> kAllCategories = {
    PlaceCategory::AdminUnit, PlaceCategory::POI, PlaceCategory::NaturalFeature, PlaceCategory::TrafficWay,
    PlaceCategory::Unknown};

const char* to_string(PlaceCategory c) noexcept;

/// GeoNames feature class: A/P admin units, L/S POIs, H/T/U/V natural
/// features, R traffic ways.
PlaceCategory categorize_entry(const GazetteerEntry& entry) noexcept;
PlaceCategory categorize_feature_class(char feature_class) noexcept;

/// Keyword rules on whole whitespace tokens, precedence traffic way >
/// natural feature > POI.
PlaceCategory categorize_surface(std::string_view surface);

/// Gazetteer entry category when the mention's GeoNames id is known to
/// `gaz`, else the keyword rules. `gaz` may be null.
PlaceCategory categorize_mention(const Mention& mention, const Gazetteer* gaz);

}  // namespace geovote
