#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "comove/keyvalue.hpp"
#include "comove/pipeline.hpp"
#include "comove/plot.hpp"
#include "comove/simulators.hpp"

namespace comove {

inline const std::vector<Method> kAllMethods{Method::silhouette, Method::graph_entropy, Method::graph_entropy_literal,
                                             Method::baseline_x, Method::baseline_y};

/// run_detectors for each window length, concatenated in window order.
std::vector<MetricSeries> analyze(const TrajectoryTensor& t, const std::vector<std::size_t>& windows,
                                  const std::vector<Method>& methods, const DetectorOptions& opts);

/// Per (method, window) means over the non-missing windows of both runs.
struct ComparisonRow {
    Method method = Method::silhouette;
    std::size_t window = 0;
    std::optional<double> organized;
    std::size_t organized_present = 0;
    std::optional<double> disorganized;
    std::size_t disorganized_present = 0;
    std::size_t windows_total = 0;
};

/// Rows for every (method, window) present in both inputs, in input order.
std::vector<ComparisonRow> compare_series(const std::vector<MetricSeries>& organized,
                                          const std::vector<MetricSeries>& disorganized);

/// Separation statistic: the mean, with an all-missing run counted as 0.
double mean_or_zero(const std::optional<double>& mean);
/// mean_or_zero(organized) - mean_or_zero(disorganized).
double difference(const ComparisonRow& r);

/// Plots of a single run: one per detector family and window length.
struct NamedPlot {
    std::string stem;  ///< file name without extension
    LinePlot plot;
};
std::vector<NamedPlot> series_plots(const std::string& title, const std::vector<MetricSeries>& series,
                                    Method entropy_method);

/// Organized against disorganized, one plot per detector family and window:
/// silhouette, the chosen entropy variant, and the x/y baseline.
std::vector<NamedPlot> comparison_plots(const std::string& title, const std::string& stem_prefix,
                                        const std::vector<MetricSeries>& organized,
                                        const std::vector<MetricSeries>& disorganized, Method entropy_method);

/// CSV: `scenario,method,window,organized_mean,organized_windows,disorganized_mean,disorganized_windows,windows,difference,ordering`.
std::string format_comparison_csv(const std::vector<std::pair<std::string, std::vector<ComparisonRow>>>& groups);
/// The same content as a Markdown table.
std::string format_comparison_table(const std::vector<std::pair<std::string, std::vector<ComparisonRow>>>& groups);

struct ReproduceOptions {
    std::uint64_t seed = 1;
    std::optional<std::size_t> num_steps;
    /// Scenario parameter overrides; keys must be scenario-qualified
    /// (`ants.deposit`, `flocking.vision`, ...).
    KeyValueFile overrides;
    std::vector<std::size_t> windows{25, 50};
    DetectorOptions detector;
    Method entropy_plot = Method::graph_entropy;
};

struct ReproduceResult {
    std::vector<std::pair<std::string, std::vector<ComparisonRow>>> summary;  ///< keyed by scenario name
};

/// Simulates every scenario organized and disorganized, runs all detectors
/// and writes under `out`:
///   trajectories/<scenario>_<mode>.csv (+ .meta, _events.csv)
///   metrics/<scenario>_<mode>.csv      (8 files)
///   plots/<scenario>_w<L>_<family>.svg (3 per scenario and window)
///   summary.csv, summary.md
/// The eight runs execute concurrently; output does not depend on scheduling.
ReproduceResult reproduce(const ReproduceOptions& opts, const std::filesystem::path& out);

/// Scenario config for reproduce: defaults, then the qualified overrides
/// that belong to the scenario, then the step count.
ScenarioConfig reproduce_config(Scenario s, bool organized, const ReproduceOptions& opts);

std::string mode_name(bool organized);

}  // namespace comove
