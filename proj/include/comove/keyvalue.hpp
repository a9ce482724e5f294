#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace comove {

/// Flat `key=value` text: one pair per line, `#` starts a comment, blank lines
/// ignored. Keys are unique.
class KeyValueFile {
public:
    static KeyValueFile read(const std::filesystem::path& path);
    static KeyValueFile parse(std::string_view text, const std::string& source = "<string>");

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::string& get(const std::string& key) const;

    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    std::uint64_t get_uint(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
    const std::map<std::string, std::string>& entries() const noexcept { return values_; }

private:
    std::string source_;
    std::map<std::string, std::string> values_;
};

double parse_double(std::string_view s, const std::string& what);
std::int64_t parse_int(std::string_view s, const std::string& what);
std::uint64_t parse_uint(std::string_view s, const std::string& what);
bool parse_bool(std::string_view s, const std::string& what);
std::string_view trim(std::string_view s) noexcept;

}  // namespace comove
