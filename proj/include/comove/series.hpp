#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace comove {

enum class Method { silhouette, graph_entropy, graph_entropy_literal, baseline_x, baseline_y };

std::string to_string(Method m);
Method parse_method(const std::string& s);

using OptionalValues = std::vector<std::optional<double>>;

/// Per-window detector output; index k is the window starting at step k.
struct MetricSeries {
    Method method = Method::silhouette;
    std::size_t window_length = 0;
    OptionalValues values;
    OptionalValues smoothed;
    OptionalValues smoothed_diff;  ///< first difference of `smoothed`

    std::size_t size() const noexcept { return values.size(); }
};

/// Centered moving average of the present values within +-span/2; the window
/// is truncated at the series edges. Missing inputs stay missing. `span` must
/// be odd.
OptionalValues moving_average(const OptionalValues& values, std::size_t span);

/// d[k] = s[k] - s[k-1]; missing at k = 0 or when either side is missing.
OptionalValues first_difference(const OptionalValues& s);

/// Fills `smoothed` and `smoothed_diff` from `values`.
MetricSeries smooth(MetricSeries s, std::size_t span);

/// Mean over present values; missing when none are present.
std::optional<double> present_mean(const OptionalValues& v);
std::size_t present_count(const OptionalValues& v);

/// Metrics CSV: `window_start,method,window_length,value,smoothed,smoothed_diff`,
/// missing values as empty fields.
std::string format_metrics_csv(const std::vector<MetricSeries>& series);
void write_metrics_csv(const std::vector<MetricSeries>& series, const std::filesystem::path& path);
std::vector<MetricSeries> read_metrics_csv(const std::filesystem::path& path);

}  // namespace comove
