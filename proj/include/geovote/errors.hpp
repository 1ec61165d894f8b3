#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geovote {

/// Malformed input file. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Ensemble configuration does not match the inputs.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string approach_id = {})
        : std::runtime_error(approach_id.empty() ? what : what + ": " + approach_id),
          approach_id_(std::move(approach_id)) {}

    const std::string& approach_id() const noexcept { return approach_id_; }

private:
    std::string approach_id_;
};

}  // namespace geovote
