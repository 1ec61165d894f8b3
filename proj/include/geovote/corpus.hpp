#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geovote/geodesy.hpp"

namespace geovote {

/// Half-open code point range into the document text.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    friend bool operator==(const Span&, const Span&) = default;
};

/// A gold-annotated toponym occurrence.
struct Mention {
    std::string mention_id;
    std::string doc_id;
    std::string surface;
    Span span;
    GeoPoint gold;
    std::optional<std::int64_t> gazetteer_id;
    std::optional<std::string> context;

    friend bool operator==(const Mention&, const Mention&) = default;
};

struct Corpus {
    std::string name;
    std::vector<Mention> mentions;
    std::map<std::string, std::string> documents;  // doc_id -> text, optional
};

/// Counters and warnings collected while loading a file.
struct LoadReport {
    std::size_t records_seen = 0;
    std::size_t skipped_missing_coordinates = 0;
    std::size_t skipped_out_of_range = 0;
    std::size_t skipped_bad_span = 0;
    std::vector<std::string> warnings;

    std::size_t skipped() const noexcept {
        return skipped_missing_coordinates + skipped_out_of_range + skipped_bad_span;
    }
};

struct CorpusLoad {
    Corpus corpus;
    LoadReport report;
};

/// Tag-name map for one annotated-XML dataset.
///
/// Paths are '/'-separated element names relative to the toponym element,
/// optionally ending in "@attr" to read an attribute. A "doc:" prefix
/// resolves the path against the document element instead (used by corpora
/// that annotate one place per page). An empty path means "absent".
struct XmlProfile {
    std::string name;
    std::string document_path = "articles/article";  // from the root, root element included
    std::string document_id = "@docid";
    std::string text_path = "text";  // relative to the document element
    std::string toponym_path = "toponyms/toponym";
    std::string surface = "phrase";
    std::string start = "start";
    std::string end = "end";
    std::string lat = "gaztag/lat";
    std::string lon = "gaztag/lon";
    std::string geonames_id = "gaztag@geonameid";
    bool byte_offsets = false;  // true when start/end count UTF-8 bytes
};

/// Parses "key = value" lines ('#' comments). Unknown keys are an error.
XmlProfile parse_xml_profile(std::istream& in, const std::string& source = "<stream>");
XmlProfile load_xml_profile(const std::filesystem::path& path);

/// One Mention per toponym record. Records with missing or unparseable
/// coordinates are skipped and counted; out-of-range coordinates are
/// skipped with a warning. Throws ParseError (with line) on malformed XML.
CorpusLoad parse_annotated_xml(const std::filesystem::path& path, const XmlProfile& profile);
CorpusLoad parse_annotated_xml(std::istream& in, const XmlProfile& profile, const std::string& source = "<stream>");

/// Normalized interchange: one JSON object per line with mention_id,
/// doc_id, surface, start, end, lat, lon and optional geonames_id and
/// context. Throws ParseError naming the line and field on missing fields.
Corpus parse_mentions_jsonl(std::istream& in, const std::string& source = "<stream>");
Corpus parse_mentions_jsonl(const std::filesystem::path& path);
void write_mentions_jsonl(std::ostream& out, const Corpus& corpus);

/// The 29 surface forms whose gold coordinates disagree between
/// Wikipedia and GeoNames.
std::span<const std::string_view> misaligned_toponyms() noexcept;

bool is_misaligned(std::string_view surface);

struct FilterResult {
    Corpus corpus;
    std::size_t removed = 0;
};

/// Drops mentions whose trimmed, case-folded surface is on the misaligned
/// list.
FilterResult filter_misaligned(const Corpus& corpus);

}  // namespace geovote
