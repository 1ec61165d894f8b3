#include "geovote/gazetteer.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>

#include "geovote/errors.hpp"
#include "text.hpp"

namespace geovote {

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries) {
    for (auto& e : entries) entries_.insert_or_assign(e.geonames_id, std::move(e));

    for (const auto& [id, e] : entries_) {
        auto index = [&](std::string_view name) {
            auto key = detail::fold_key(name);
            if (key.empty()) return;
            auto& ids = by_name_[key];
            if (ids.empty() || ids.back() != id) ids.push_back(id);
        };
        index(e.name);
        index(e.ascii_name);
        for (const auto& alt : e.alternate_names) index(alt);
    }
}

const GazetteerEntry* Gazetteer::find(std::int64_t geonames_id) const {
    auto it = entries_.find(geonames_id);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const GazetteerEntry*> Gazetteer::candidates(std::string_view surface) const {
    std::vector<const GazetteerEntry*> out;
    auto it = by_name_.find(detail::fold_key(surface));
    if (it == by_name_.end()) return out;
    for (auto id : it->second) out.push_back(&entries_.at(id));
    std::sort(out.begin(), out.end(), [](const GazetteerEntry* a, const GazetteerEntry* b) {
        if (a->population != b->population) return a->population > b->population;
        return a->geonames_id < b->geonames_id;
    });
    return out;
}

GazetteerLoad parse_geonames_tsv(std::istream& in, const std::string& source) {
    GazetteerLoad load;
    std::map<std::int64_t, GazetteerEntry> rows;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++load.rows_seen;

        auto warn = [&](const std::string& msg) {
            load.warnings.push_back(source + ":" + std::to_string(lineno) + ": " + msg);
        };
        const auto cols = detail::split(line, '\t');
        if (cols.size() < 15) {
            ++load.rows_skipped;
            warn("expected at least 15 columns, got " + std::to_string(cols.size()) + "; row skipped");
            continue;
        }
        const auto id = detail::parse_int(cols[0]);
        const auto lat = detail::parse_double(cols[4]);
        const auto lon = detail::parse_double(cols[5]);
        std::optional<std::int64_t> population = std::int64_t{0};
        if (!detail::trim(cols[14]).empty()) population = detail::parse_int(cols[14]);
        std::optional<GeoPoint> point;
        if (lat && lon && *lon >= -180.0 && *lon <= 180.0) point = GeoPoint::make(*lat, *lon);
        if (!id || !point || !population || *population < 0 || cols[6].size() > 1) {
            ++load.rows_skipped;
            warn("malformed row skipped");
            continue;
        }

        GazetteerEntry e;
        e.geonames_id = *id;
        e.name = std::string(cols[1]);
        e.ascii_name = std::string(cols[2]);
        if (!cols[3].empty()) {
            for (auto alt : detail::split(cols[3], ',')) {
                if (!detail::trim(alt).empty()) e.alternate_names.emplace_back(alt);
            }
        }
        e.point = *point;
        e.feature_class = cols[6].empty() ? '\0' : cols[6].front();
        e.feature_code = std::string(cols[7]);
        e.population = *population;

        if (rows.contains(e.geonames_id)) warn("duplicate geonameid " + std::to_string(e.geonames_id) + "; last row wins");
        rows.insert_or_assign(e.geonames_id, std::move(e));
    }

    std::vector<GazetteerEntry> entries;
    entries.reserve(rows.size());
    for (auto& [_, e] : rows) entries.push_back(std::move(e));
    load.gazetteer = Gazetteer(std::move(entries));
    return load;
}

GazetteerLoad load_geonames_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open gazetteer file");
    return parse_geonames_tsv(in, path.string());
}

std::vector<GazetteerEntry> lookup_candidates(const Gazetteer& gaz, std::string_view surface) {
    std::vector<GazetteerEntry> out;
    for (const auto* e : gaz.candidates(surface)) out.push_back(*e);
    return out;
}

Prediction population_resolve(const Gazetteer& gaz, std::string_view surface) {
    const auto cands = gaz.candidates(surface);
    if (cands.empty()) return Prediction::invalid({});
    return {{}, cands.front()->point};
}

PredictionSet population_baseline(const Corpus& corpus, const Gazetteer& gaz, std::string approach_id) {
    PredictionSet set{std::move(approach_id), {}};
    for (const auto& m : corpus.mentions) {
        auto p = population_resolve(gaz, m.surface);
        p.mention_id = m.mention_id;
        set.predictions.emplace(m.mention_id, std::move(p));
    }
    return set;
}

const char* to_string(PlaceCategory c) noexcept {
    switch (c) {
        case PlaceCategory::AdminUnit: return "AdminUnit";
        case PlaceCategory::POI: return "POI";
        case PlaceCategory::NaturalFeature: return "NaturalFeature";
        case PlaceCategory::TrafficWay: return "TrafficWay";
        case PlaceCategory::Unknown: return "Unknown";
    }
    return "Unknown";
}

PlaceCategory categorize_feature_class(char feature_class) noexcept {
    switch (feature_class) {
        case 'A':
        case 'P': return PlaceCategory::AdminUnit;
        case 'L':
        case 'S': return PlaceCategory::POI;
        case 'H':
        case 'T':
        case 'U':
        case 'V': return PlaceCategory::NaturalFeature;
        case 'R': return PlaceCategory::TrafficWay;
        default: return PlaceCategory::Unknown;
    }
}

PlaceCategory categorize_entry(const GazetteerEntry& entry) noexcept { return categorize_feature_class(entry.feature_class); }

namespace {

constexpr std::array<std::string_view, 10> kTrafficWords = {"street", "road", "roads", "railroad", "highway",
                                                           "way",    "drive", "hwy",  "bridge",  "trail"};
constexpr std::array<std::string_view, 2> kNaturalWords = {"river", "creek"};
constexpr std::array<std::string_view, 5> kPoiWords = {"church", "hospital", "school", "university", "park"};

bool is_ascii_punct(char c) {
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

}  // namespace

PlaceCategory categorize_surface(std::string_view surface) {
    std::vector<std::string> tokens;
    for (auto tok : detail::split_whitespace(surface)) {
        while (!tok.empty() && is_ascii_punct(tok.front())) tok.remove_prefix(1);
        while (!tok.empty() && is_ascii_punct(tok.back())) tok.remove_suffix(1);
        if (!tok.empty()) tokens.push_back(detail::casefold(tok));
    }
    auto any_of = [&](std::span<const std::string_view> words) {
        return std::any_of(tokens.begin(), tokens.end(), [&](const std::string& t) {
            return std::find(words.begin(), words.end(), t) != words.end();
        });
    };
    if (any_of(kTrafficWords)) return PlaceCategory::TrafficWay;
    if (any_of(kNaturalWords)) return PlaceCategory::NaturalFeature;
    if (any_of(kPoiWords)) return PlaceCategory::POI;
    return PlaceCategory::Unknown;
}

PlaceCategory categorize_mention(const Mention& mention, const Gazetteer* gaz) {
    if (gaz && mention.gazetteer_id) {
        if (const auto* e = gaz->find(*mention.gazetteer_id)) return categorize_entry(*e);
    }
    return categorize_surface(mention.surface);
}

}  // namespace geovote
