#include "geovote/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

#include "geovote/errors.hpp"
#include "text.hpp"

namespace geovote {

namespace pt = boost::property_tree;
using nlohmann::json;

// ---------------------------------------------------------------------------
// XML profiles

XmlProfile parse_xml_profile(std::istream& in, const std::string& source) {
    XmlProfile p;
    std::map<std::string, std::string*, std::less<>> fields = {
        {"name", &p.name},
        {"document_path", &p.document_path},
        {"document_id", &p.document_id},
        {"text_path", &p.text_path},
        {"toponym_path", &p.toponym_path},
        {"surface", &p.surface},
        {"start", &p.start},
        {"end", &p.end},
        {"lat", &p.lat},
        {"lon", &p.lon},
        {"geonames_id", &p.geonames_id},
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ParseError(source, lineno, "expected 'key = value'");
        const auto key = detail::trim(body.substr(0, eq));
        const auto value = std::string(detail::trim(body.substr(eq + 1)));
        if (key == "offsets") {
            if (value == "bytes") {
                p.byte_offsets = true;
            } else if (value == "codepoints") {
                p.byte_offsets = false;
            } else {
                throw ParseError(source, lineno, "offsets must be 'bytes' or 'codepoints'");
            }
            continue;
        }
        auto it = fields.find(key);
        if (it == fields.end()) throw ParseError(source, lineno, "unknown profile key '" + std::string(key) + "'");
        *it->second = value;
    }
    return p;
}

XmlProfile load_xml_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open XML profile");
    auto p = parse_xml_profile(in, path.string());
    if (p.name.empty()) p.name = path.stem().string();
    return p;
}

// ---------------------------------------------------------------------------
// Annotated XML

namespace {

pt::ptree::path_type element_path(std::string_view path) { return {std::string(path), '/'}; }

// Reads `path` (optionally "a/b@attr") relative to `node`.
std::optional<std::string> read_path(const pt::ptree& node, std::string_view path) {
    if (path.empty()) return std::nullopt;
    std::string full;
    const auto at = path.find('@');
    if (at == std::string_view::npos) {
        full = std::string(path);
    } else {
        const auto elem = path.substr(0, at);
        full = (elem.empty() ? std::string() : std::string(elem) + "/") + "<xmlattr>/" + std::string(path.substr(at + 1));
    }
    auto child = node.get_child_optional(element_path(full));
    if (!child) return std::nullopt;
    return child->data();
}

std::optional<std::string> read_field(const pt::ptree& toponym, const pt::ptree& document, std::string_view path) {
    constexpr std::string_view kDocPrefix = "doc:";
    if (path.starts_with(kDocPrefix)) return read_path(document, path.substr(kDocPrefix.size()));
    return read_path(toponym, path);
}

// Calls fn(child) for every element matching a '/'-separated path whose
// last segment may repeat.
template <typename Fn>
void for_each_at(const pt::ptree& node, std::string_view path, Fn&& fn) {
    const auto slash = path.rfind('/');
    const pt::ptree* parent = &node;
    std::string_view leaf = path;
    if (slash != std::string_view::npos) {
        auto p = node.get_child_optional(element_path(path.substr(0, slash)));
        if (!p) return;
        parent = &*p;
        leaf = path.substr(slash + 1);
    }
    const auto range = parent->equal_range(std::string(leaf));
    for (auto it = range.first; it != range.second; ++it) fn(it->second);
}

// rapidxml does not validate closing tag names, so mismatches are caught
// here first.
void check_closing_tags(std::string_view xml, const std::string& source) {
    std::vector<std::string_view> open;
    std::size_t line = 1;
    std::size_t i = 0;
    auto skip_to = [&](std::string_view end) {
        const auto stop = xml.find(end, i);
        const auto last = stop == std::string_view::npos ? xml.size() : stop + end.size();
        line += static_cast<std::size_t>(std::count(xml.begin() + i, xml.begin() + last, '\n'));
        i = last;
    };
    while (i < xml.size()) {
        if (xml[i] == '\n') ++line;
        if (xml[i] != '<') {
            ++i;
            continue;
        }
        const auto rest = xml.substr(i);
        if (rest.starts_with("<!--")) {
            skip_to("-->");
        } else if (rest.starts_with("<![CDATA[")) {
            skip_to("]]>");
        } else if (rest.starts_with("<?")) {
            skip_to("?>");
        } else if (rest.starts_with("<!")) {
            skip_to(">");
        } else {
            const std::size_t tag_line = line;
            const bool closing = rest.size() > 1 && rest[1] == '/';
            std::size_t j = i + (closing ? 2 : 1);
            const std::size_t name_start = j;
            while (j < xml.size() && !std::isspace(static_cast<unsigned char>(xml[j])) && xml[j] != '>' &&
                   xml[j] != '/') {
                ++j;
            }
            const auto name = xml.substr(name_start, j - name_start);
            char quote = 0;
            for (; j < xml.size() && (quote || xml[j] != '>'); ++j) {
                if (xml[j] == '\n') ++line;
                if (quote && xml[j] == quote) quote = 0;
                else if (!quote && (xml[j] == '"' || xml[j] == '\'')) quote = xml[j];
            }
            if (j >= xml.size()) return;  // unterminated; left to the parser
            if (closing) {
                if (open.empty() || open.back() != name) {
                    throw ParseError(source, tag_line,
                                     "closing tag </" + std::string(name) + "> does not match " +
                                         (open.empty() ? std::string("any open element")
                                                       : "<" + std::string(open.back()) + ">"));
                }
                open.pop_back();
            } else if (xml[j - 1] != '/') {
                open.push_back(name);
            }
            i = j + 1;
        }
    }
}

}  // namespace

CorpusLoad parse_annotated_xml(std::istream& in, const XmlProfile& profile, const std::string& source) {
    const std::string xml{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    check_closing_tags(xml, source);
    pt::ptree tree;
    try {
        std::istringstream body(xml);
        pt::read_xml(body, tree);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(source, e.line(), e.message());
    }

    CorpusLoad load;
    load.corpus.name = profile.name;
    auto& report = load.report;
    std::set<std::string> ids;
    std::size_t doc_ordinal = 0;

    for_each_at(tree, profile.document_path, [&](const pt::ptree& doc) {
        ++doc_ordinal;
        std::string doc_id = read_path(doc, profile.document_id).value_or("");
        doc_id = std::string(detail::trim(doc_id));
        if (doc_id.empty()) doc_id = "doc" + std::to_string(doc_ordinal);

        const auto text = read_path(doc, profile.text_path);
        if (text) load.corpus.documents[doc_id] = *text;

        std::size_t index = 0;
        for_each_at(doc, profile.toponym_path, [&](const pt::ptree& top) {
            ++report.records_seen;
            const std::string mention_id = doc_id + ":" + std::to_string(index++);
            auto warn = [&](const std::string& msg) { report.warnings.push_back(source + ": " + mention_id + ": " + msg); };

            const auto lat = detail::parse_double(read_field(top, doc, profile.lat).value_or(""));
            const auto lon = detail::parse_double(read_field(top, doc, profile.lon).value_or(""));
            if (!lat || !lon) {
                ++report.skipped_missing_coordinates;
                return;
            }
            auto gold = GeoPoint::make(*lat, *lon);
            if (!gold || *lon < -180.0 || *lon > 180.0) {
                ++report.skipped_out_of_range;
                warn("coordinates out of range, record skipped");
                return;
            }

            auto start = detail::parse_int(read_field(top, doc, profile.start).value_or(""));
            auto end = detail::parse_int(read_field(top, doc, profile.end).value_or(""));
            if (!start || !end || *start < 0 || *start >= *end) {
                ++report.skipped_bad_span;
                warn("missing or empty span, record skipped");
                return;
            }
            Span span{static_cast<std::size_t>(*start), static_cast<std::size_t>(*end)};
            if (profile.byte_offsets && text) {
                const auto b = detail::utf8_codepoint_index(*text, span.start);
                const auto e = detail::utf8_codepoint_index(*text, span.end);
                if (!b || !e) {
                    ++report.skipped_bad_span;
                    warn("byte span does not fall on character boundaries, record skipped");
                    return;
                }
                span = {*b, *e};
            }

            std::optional<std::string> in_text;
            if (text) in_text = detail::utf8_substr(*text, span.start, span.end);
            std::string surface = std::string(detail::trim(read_field(top, doc, profile.surface).value_or("")));
            if (surface.empty() && in_text) surface = *in_text;
            if (surface.empty()) {
                ++report.skipped_bad_span;
                warn("no surface form, record skipped");
                return;
            }
            if (text && (!in_text || *in_text != surface)) warn("surface '" + surface + "' does not match the text at its span");

            std::optional<std::int64_t> gid;
            if (auto raw = read_field(top, doc, profile.geonames_id); raw && !detail::trim(*raw).empty()) {
                gid = detail::parse_int(*raw);
                if (!gid) warn("unparseable GeoNames id '" + *raw + "' ignored");
            }

            if (!ids.insert(mention_id).second) throw ParseError(source, 0, "duplicate mention id " + mention_id);
            load.corpus.mentions.push_back({mention_id, doc_id, surface, span, *gold, gid, std::nullopt});
        });
    });
    return load;
}

CorpusLoad parse_annotated_xml(const std::filesystem::path& path, const XmlProfile& profile) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open corpus file");
    auto load = parse_annotated_xml(in, profile, path.string());
    if (load.corpus.name.empty()) load.corpus.name = path.stem().string();
    return load;
}

// ---------------------------------------------------------------------------
// JSON Lines interchange

Corpus parse_mentions_jsonl(std::istream& in, const std::string& source) {
    Corpus corpus;
    std::set<std::string> ids;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty()) continue;

        json rec;
        try {
            rec = json::parse(body);
        } catch (const json::parse_error& e) {
            throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!rec.is_object()) throw ParseError(source, lineno, "record is not a JSON object");

        auto require = [&](const char* field, auto check) -> const json& {
            auto it = rec.find(field);
            if (it == rec.end() || it->is_null()) {
                throw ParseError(source, lineno, std::string("missing field '") + field + "'");
            }
            if (!check(*it)) throw ParseError(source, lineno, std::string("field '") + field + "' has the wrong type");
            return *it;
        };
        auto is_string = [](const json& j) { return j.is_string(); };
        auto is_uint = [](const json& j) { return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0); };
        auto is_number = [](const json& j) { return j.is_number(); };

        Mention m{
            require("mention_id", is_string).get<std::string>(),
            require("doc_id", is_string).get<std::string>(),
            require("surface", is_string).get<std::string>(),
            {require("start", is_uint).get<std::size_t>(), require("end", is_uint).get<std::size_t>()},
            GeoPoint(0.0, 0.0),
            std::nullopt,
            std::nullopt,
        };
        const double lat = require("lat", is_number).get<double>();
        const double lon = require("lon", is_number).get<double>();
        auto gold = GeoPoint::make(lat, lon);
        if (!gold || lon < -180.0 || lon > 180.0) throw ParseError(source, lineno, "field 'lat'/'lon' out of range");
        m.gold = *gold;
        if (m.span.start >= m.span.end) throw ParseError(source, lineno, "field 'start' must be less than 'end'");

        if (auto it = rec.find("geonames_id"); it != rec.end() && !it->is_null()) {
            if (!it->is_number_integer()) throw ParseError(source, lineno, "field 'geonames_id' has the wrong type");
            m.gazetteer_id = it->get<std::int64_t>();
        }
        if (auto it = rec.find("context"); it != rec.end() && !it->is_null()) {
            if (!it->is_string()) throw ParseError(source, lineno, "field 'context' has the wrong type");
            m.context = it->get<std::string>();
        }
        if (!ids.insert(m.mention_id).second) {
            throw ParseError(source, lineno, "duplicate mention_id '" + m.mention_id + "'");
        }
        corpus.mentions.push_back(std::move(m));
    }
    return corpus;
}

Corpus parse_mentions_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open mention file");
    auto corpus = parse_mentions_jsonl(in, path.string());
    corpus.name = path.stem().string();
    return corpus;
}

void write_mentions_jsonl(std::ostream& out, const Corpus& corpus) {
    for (const auto& m : corpus.mentions) {
        json rec;
        rec["mention_id"] = m.mention_id;
        rec["doc_id"] = m.doc_id;
        rec["surface"] = m.surface;
        rec["start"] = m.span.start;
        rec["end"] = m.span.end;
        rec["lat"] = m.gold.lat();
        rec["lon"] = m.gold.lon();
        if (m.gazetteer_id) rec["geonames_id"] = *m.gazetteer_id;
        if (m.context) rec["context"] = *m.context;
        out << rec.dump() << '\n';
    }
}

// ---------------------------------------------------------------------------
// Misaligned toponyms

namespace {

constexpr std::array<std::string_view, 29> kMisaligned = {
    "China",         "Chinese",       "Russia",
    "Russian",       "Russians",      "Australia",
    "Canada",        "Canadians",     "Canadian",
    "United States", "American",      "USA",
    "America",       "U.S.",          "U.S",
    "United States of America",       "Americans",
    "North America", "South America", "India",
    "Algeria",       "Europe",        "European",
    "Western Europe",                 "Asia",
    "Africa",        "West Africa",   "North Africa",
    "Middle East",
};

const std::set<std::string>& misaligned_keys() {
    static const std::set<std::string> keys = [] {
        std::set<std::string> k;
        for (auto s : kMisaligned) k.insert(detail::fold_key(s));
        return k;
    }();
    return keys;
}

}  // namespace

std::span<const std::string_view> misaligned_toponyms() noexcept { return kMisaligned; }

bool is_misaligned(std::string_view surface) { return misaligned_keys().contains(detail::fold_key(surface)); }

FilterResult filter_misaligned(const Corpus& corpus) {
    FilterResult r;
    r.corpus.name = corpus.name;
    r.corpus.documents = corpus.documents;
    for (const auto& m : corpus.mentions) {
        if (is_misaligned(m.surface)) {
            ++r.removed;
        } else {
            r.corpus.mentions.push_back(m);
        }
    }
    return r;
}

}  // namespace geovote
