#include "geovote/predictions.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "geovote/errors.hpp"
#include "text.hpp"

namespace geovote {

using nlohmann::json;

Prediction normalize_invalid(const RawPrediction& raw) {
    if (raw.invalid_flag || !raw.lat || !raw.lon) return Prediction::invalid(raw.mention_id);
    const double lat = *raw.lat;
    const double lon = *raw.lon;
    if (lat == 0.0 && lon == 0.0) return Prediction::invalid(raw.mention_id);
    if (!(lon >= -180.0 && lon <= 180.0)) return Prediction::invalid(raw.mention_id);
    return {raw.mention_id, GeoPoint::make(lat, lon)};
}

Prediction PredictionSet::lookup(const std::string& mention_id) const {
    auto it = predictions.find(mention_id);
    return it == predictions.end() ? Prediction::invalid(mention_id) : it->second;
}

namespace {

std::optional<double> number_field(const json& rec, const char* key) {
    auto it = rec.find(key);
    if (it == rec.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) return std::nullopt;
    return it->get<double>();
}

}  // namespace

PredictionSet parse_predictions(std::istream& in, const std::string& source) {
    PredictionSet set;
    bool have_approach = false;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '#') continue;

        json rec;
        try {
            rec = json::parse(body);
        } catch (const json::parse_error& e) {
            throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!rec.is_object()) throw ParseError(source, lineno, "record is not a JSON object");

        RawPrediction raw;
        for (const char* key : {"approach", "mention_id"}) {
            auto it = rec.find(key);
            if (it == rec.end() || !it->is_string()) {
                throw ParseError(source, lineno, std::string("missing string field '") + key + "'");
            }
        }
        raw.approach = rec["approach"].get<std::string>();
        raw.mention_id = rec["mention_id"].get<std::string>();
        raw.lat = number_field(rec, "lat");
        raw.lon = number_field(rec, "lon");
        if (auto it = rec.find("invalid"); it != rec.end() && it->is_boolean()) raw.invalid_flag = it->get<bool>();

        if (!have_approach) {
            set.approach_id = raw.approach;
            have_approach = true;
        } else if (raw.approach != set.approach_id) {
            throw ParseError(source, lineno,
                             "mixed approach ids '" + set.approach_id + "' and '" + raw.approach + "'");
        }

        auto prediction = normalize_invalid(raw);
        if (!set.predictions.emplace(raw.mention_id, std::move(prediction)).second) {
            throw ParseError(source, lineno, "duplicate mention_id '" + raw.mention_id + "'");
        }
    }

    if (!have_approach) throw ParseError(source, 0, "no prediction records; approach id unknown");
    return set;
}

PredictionSet load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open prediction file");
    return parse_predictions(in, path.string());
}

void write_predictions(std::ostream& out, const PredictionSet& set) {
    for (const auto& [id, p] : set.predictions) {
        json rec;
        rec["approach"] = set.approach_id;
        rec["mention_id"] = id;
        if (p.valid()) {
            rec["lat"] = p.point->lat();
            rec["lon"] = p.point->lon();
        } else {
            rec["invalid"] = true;
        }
        out << rec.dump() << '\n';
    }
}

}  // namespace geovote
