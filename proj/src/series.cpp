#include "comove/series.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "comove/errors.hpp"
#include "comove/keyvalue.hpp"

namespace comove {

std::string to_string(Method m) {
    switch (m) {
        case Method::silhouette: return "silhouette";
        case Method::graph_entropy: return "graph_entropy";
        case Method::graph_entropy_literal: return "graph_entropy_literal";
        case Method::baseline_x: return "baseline_x";
        case Method::baseline_y: return "baseline_y";
    }
    return "unknown";
}

Method parse_method(const std::string& s) {
    for (auto m : {Method::silhouette, Method::graph_entropy, Method::graph_entropy_literal, Method::baseline_x,
                   Method::baseline_y})
        if (to_string(m) == s) return m;
    throw std::invalid_argument("unknown method '" + s + "'");
}

OptionalValues moving_average(const OptionalValues& values, std::size_t span) {
    if (span == 0 || span % 2 == 0) throw std::invalid_argument("smoothing span must be odd and positive");
    const std::size_t half = span / 2;
    const std::size_t n = values.size();
    OptionalValues out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!values[i]) continue;
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t k = lo; k <= hi; ++k) {
            if (values[k]) {
                sum += *values[k];
                ++count;
            }
        }
        out[i] = sum / static_cast<double>(count);
    }
    return out;
}

OptionalValues first_difference(const OptionalValues& s) {
    OptionalValues out(s.size());
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s[k] && s[k - 1]) out[k] = *s[k] - *s[k - 1];
    return out;
}

MetricSeries smooth(MetricSeries s, std::size_t span) {
    s.smoothed = moving_average(s.values, span);
    s.smoothed_diff = first_difference(s.smoothed);
    return s;
}

std::optional<double> present_mean(const OptionalValues& v) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& x : v) {
        if (x) {
            sum += *x;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

std::size_t present_count(const OptionalValues& v) {
    std::size_t n = 0;
    for (const auto& x : v) n += x.has_value();
    return n;
}

namespace {

void append_value(std::string& out, const std::optional<double>& v) {
    if (!v) return;
    char buf[64];
    // Shortest round-trip representation.
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *v);
    if (ec != std::errc{}) throw std::runtime_error("value formatting failed");
    out.append(buf, ptr);
}

const std::optional<double>& at_or_missing(const OptionalValues& v, std::size_t k) {
    static const std::optional<double> missing;
    return k < v.size() ? v[k] : missing;
}

}  // namespace

std::string format_metrics_csv(const std::vector<MetricSeries>& series) {
    std::string out = "window_start,method,window_length,value,smoothed,smoothed_diff\n";
    for (const auto& s : series) {
        const std::string prefix_tail = "," + to_string(s.method) + "," + std::to_string(s.window_length) + ",";
        for (std::size_t k = 0; k < s.values.size(); ++k) {
            out += std::to_string(k);
            out += prefix_tail;
            append_value(out, s.values[k]);
            out += ',';
            append_value(out, at_or_missing(s.smoothed, k));
            out += ',';
            append_value(out, at_or_missing(s.smoothed_diff, k));
            out += '\n';
        }
    }
    return out;
}

void write_metrics_csv(const std::vector<MetricSeries>& series, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << format_metrics_csv(series);
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::vector<MetricSeries> read_metrics_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const std::string source = path.string();
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || !trim(line).starts_with("window_start,method,window_length,value,smoothed"))
        throw ParseError(source, 1, "expected metrics CSV header");
    std::vector<MetricSeries> out;
    std::map<std::pair<std::string, std::size_t>, std::size_t> index;
    auto opt = [&](const std::string& field) -> std::optional<double> {
        if (field.empty()) return std::nullopt;
        try {
            return parse_double(field, "value");
        } catch (const std::invalid_argument& e) {
            throw ParseError(source, line_no, e.what());
        }
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(std::string(trim(line)));
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        if (fields.size() < 5) throw ParseError(source, line_no, "expected at least 5 fields");
        while (fields.size() < 6) fields.emplace_back();
        std::size_t slot = 0;
        try {
            const auto window = static_cast<std::size_t>(parse_uint(fields[2], "window_length"));
            const auto key = std::make_pair(fields[1], window);
            auto it = index.find(key);
            if (it == index.end()) {
                MetricSeries fresh;
                fresh.method = parse_method(fields[1]);
                fresh.window_length = window;
                out.push_back(std::move(fresh));
                it = index.emplace(key, out.size() - 1).first;
            }
            slot = it->second;
            if (parse_uint(fields[0], "window_start") != out[slot].values.size())
                throw ParseError(source, line_no, "window_start out of sequence");
        } catch (const std::invalid_argument& e) {
            throw ParseError(source, line_no, e.what());
        }
        auto& s = out[slot];
        s.values.push_back(opt(fields[3]));
        s.smoothed.push_back(opt(fields[4]));
        s.smoothed_diff.push_back(opt(fields[5]));
    }
    return out;
}

}  // namespace comove
