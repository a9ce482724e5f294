#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace comove {

/// Malformed input file. Carries the 1-based line number of the offending row.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace comove
