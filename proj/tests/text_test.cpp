#include <doctest.h>

#include "text.hpp"

using namespace geovote::detail;

TEST_SUITE("text") {

TEST_CASE("trim and split") {
    CHECK(trim("  a b \t\n") == "a b");
    CHECK(trim("") == "");
    CHECK(split("a,,b", ',').size() == 3);
    CHECK(split_whitespace("  High   Street ").size() == 2);
}

TEST_CASE("casefold") {
    CHECK(casefold("ZÜRICH") == "zürich");
    CHECK(casefold("ŁÓDŹ") == "łódź");
    CHECK(casefold("ΑΘΗΝΑ") == "αθηνα");
    CHECK(casefold("МОСКВА") == "москва");
    CHECK(casefold("東京") == "東京");
    CHECK(fold_key("  Paris ") == "paris");
}

TEST_CASE("utf8 offsets") {
    const std::string s = "aé東x";
    CHECK(utf8_length(s) == 4);
    CHECK(utf8_byte_offset(s, 2) == 3);
    CHECK(utf8_byte_offset(s, 4) == s.size());
    CHECK_FALSE(utf8_byte_offset(s, 5).has_value());
    CHECK(utf8_codepoint_index(s, 3) == 2);
    CHECK_FALSE(utf8_codepoint_index(s, 2).has_value());
    CHECK(utf8_substr(s, 1, 3) == "é東");
    CHECK_FALSE(utf8_substr(s, 3, 9).has_value());
}

TEST_CASE("numbers") {
    CHECK(parse_double(" 48.5 ") == 48.5);
    CHECK_FALSE(parse_double("48.5x").has_value());
    CHECK_FALSE(parse_double("").has_value());
    CHECK(parse_int("2988507") == 2988507);
    CHECK_FALSE(parse_int("12a").has_value());
    CHECK(fixed6(-0.0000001) == "0.000000");
    CHECK(fixed6(1.5) == "1.500000");
}

TEST_CASE("hashing") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

}
