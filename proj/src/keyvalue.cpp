#include "comove/keyvalue.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "comove/errors.hpp"

namespace comove {

std::string_view trim(std::string_view s) noexcept {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

namespace {

template <class T>
T parse_number(std::string_view s, const std::string& what) {
    s = trim(s);
    T value{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end || s.empty())
        throw std::invalid_argument("invalid " + what + ": '" + std::string(s) + "'");
    return value;
}

}  // namespace

double parse_double(std::string_view s, const std::string& what) { return parse_number<double>(s, what); }
std::int64_t parse_int(std::string_view s, const std::string& what) { return parse_number<std::int64_t>(s, what); }
std::uint64_t parse_uint(std::string_view s, const std::string& what) { return parse_number<std::uint64_t>(s, what); }

bool parse_bool(std::string_view s, const std::string& what) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw std::invalid_argument("invalid " + what + ": '" + std::string(s) + "' (expected true/false)");
}

KeyValueFile KeyValueFile::read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

KeyValueFile KeyValueFile::parse(std::string_view text, const std::string& source) {
    KeyValueFile out;
    out.source_ = source;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key=value");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) throw ParseError(source, line_no, "empty key");
        if (out.values_.count(key)) throw ParseError(source, line_no, "duplicate key '" + key + "'");
        out.values_[key] = std::string(trim(line.substr(eq + 1)));
    }
    return out;
}

const std::string& KeyValueFile::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw std::invalid_argument(source_ + ": missing key '" + key + "'");
    return it->second;
}

double KeyValueFile::get_double(const std::string& key) const { return parse_double(get(key), key); }
std::int64_t KeyValueFile::get_int(const std::string& key) const { return parse_int(get(key), key); }
std::uint64_t KeyValueFile::get_uint(const std::string& key) const { return parse_uint(get(key), key); }
bool KeyValueFile::get_bool(const std::string& key) const { return parse_bool(get(key), key); }

}  // namespace comove
