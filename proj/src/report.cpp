#include "comove/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace comove {

namespace {

constexpr const char* kOrganizedColor = "#1f5fa8";
constexpr const char* kDisorganizedColor = "#c8392b";
constexpr const char* kOrganizedLight = "#7fb0e0";
constexpr const char* kDisorganizedLight = "#ee9a8f";

const MetricSeries* find(const std::vector<MetricSeries>& series, Method m, std::size_t window) {
    for (const auto& s : series)
        if (s.method == m && s.window_length == window) return &s;
    return nullptr;
}

std::vector<std::size_t> windows_of(const std::vector<MetricSeries>& series) {
    std::vector<std::size_t> out;
    for (const auto& s : series)
        if (std::find(out.begin(), out.end(), s.window_length) == out.end()) out.push_back(s.window_length);
    return out;
}

std::string fmt(const std::optional<double>& v) {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return buf;
}

std::string ordering(const ComparisonRow& r) {
    const double d = difference(r);
    if (d > 0) return "organized>disorganized";
    if (d < 0) return "organized<disorganized";
    return "equal";
}

std::string entropy_label(Method m) {
    return m == Method::graph_entropy_literal ? "graph entropy (matrix sum)" : "graph entropy";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

LinePlot make_plot(std::string title, std::string y_label) {
    LinePlot p;
    p.title = std::move(title);
    p.y_label = std::move(y_label);
    return p;
}

// Faint raw values under the bold smoothed curve.
void add_pair(LinePlot& plot, const MetricSeries& s, const std::string& label, const char* strong,
              const char* light) {
    plot.lines.push_back({"", light, s.values, 1.0, 0.8});
    plot.lines.push_back({label, strong, s.smoothed, 2.2, 1.0});
}

}  // namespace

std::string mode_name(bool organized) { return organized ? "organized" : "disorganized"; }

double mean_or_zero(const std::optional<double>& mean) { return mean.value_or(0.0); }

double difference(const ComparisonRow& r) { return mean_or_zero(r.organized) - mean_or_zero(r.disorganized); }

std::vector<MetricSeries> analyze(const TrajectoryTensor& t, const std::vector<std::size_t>& windows,
                                  const std::vector<Method>& methods, const DetectorOptions& opts) {
    std::vector<MetricSeries> out;
    for (std::size_t w : windows) {
        auto part = run_detectors(t, w, methods, opts);
        std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
}

std::vector<ComparisonRow> compare_series(const std::vector<MetricSeries>& organized,
                                          const std::vector<MetricSeries>& disorganized) {
    std::vector<ComparisonRow> rows;
    for (const auto& o : organized) {
        const MetricSeries* d = find(disorganized, o.method, o.window_length);
        if (!d) continue;
        rows.push_back({o.method, o.window_length, present_mean(o.values), present_count(o.values),
                        present_mean(d->values), present_count(d->values), std::max(o.size(), d->size())});
    }
    return rows;
}

std::vector<NamedPlot> series_plots(const std::string& title, const std::vector<MetricSeries>& series,
                                    Method entropy_method) {
    std::vector<NamedPlot> plots;
    for (std::size_t w : windows_of(series)) {
        const std::string suffix = " (window " + std::to_string(w) + ")";
        const std::string stem = "w" + std::to_string(w) + "_";
        if (const auto* s = find(series, Method::silhouette, w)) {
            LinePlot p = make_plot(title + ": silhouette" + suffix, "silhouette");
            add_pair(p, *s, "silhouette", kOrganizedColor, kOrganizedLight);
            plots.push_back({stem + "silhouette", std::move(p)});
        }
        if (const auto* s = find(series, entropy_method, w)) {
            LinePlot p = make_plot(title + ": " + entropy_label(entropy_method) + suffix, "entropy");
            add_pair(p, *s, to_string(entropy_method), kOrganizedColor, kOrganizedLight);
            plots.push_back({stem + "entropy", std::move(p)});
        }
        const auto* bx = find(series, Method::baseline_x, w);
        const auto* by = find(series, Method::baseline_y, w);
        if (bx && by) {
            LinePlot p = make_plot(title + ": position entropy" + suffix, "normalized entropy");
            add_pair(p, *bx, "x", kOrganizedColor, kOrganizedLight);
            add_pair(p, *by, "y", kDisorganizedColor, kDisorganizedLight);
            plots.push_back({stem + "baseline", std::move(p)});
        }
    }
    return plots;
}

std::vector<NamedPlot> comparison_plots(const std::string& title, const std::string& stem_prefix,
                                        const std::vector<MetricSeries>& organized,
                                        const std::vector<MetricSeries>& disorganized, Method entropy_method) {
    std::vector<NamedPlot> plots;
    for (std::size_t w : windows_of(organized)) {
        const std::string suffix = " (window " + std::to_string(w) + ")";
        const std::string stem = stem_prefix + "_w" + std::to_string(w) + "_";
        auto both = [&](Method m, const std::string& family, const std::string& heading, const std::string& y) {
            const auto* o = find(organized, m, w);
            const auto* d = find(disorganized, m, w);
            if (!o || !d) return;
            LinePlot p = make_plot(title + ": " + heading + suffix, y);
            add_pair(p, *o, "organized", kOrganizedColor, kOrganizedLight);
            add_pair(p, *d, "disorganized", kDisorganizedColor, kDisorganizedLight);
            plots.push_back({stem + family, std::move(p)});
        };
        both(Method::silhouette, "silhouette", "silhouette", "silhouette");
        both(entropy_method, "entropy", entropy_label(entropy_method), "entropy");

        const auto* ox = find(organized, Method::baseline_x, w);
        const auto* oy = find(organized, Method::baseline_y, w);
        const auto* dx = find(disorganized, Method::baseline_x, w);
        const auto* dy = find(disorganized, Method::baseline_y, w);
        if (ox && oy && dx && dy) {
            LinePlot p = make_plot(title + ": position entropy" + suffix, "normalized entropy (smoothed)");
            p.lines.push_back({"organized x", kOrganizedColor, ox->smoothed, 2.2, 1.0});
            p.lines.push_back({"organized y", kOrganizedLight, oy->smoothed, 2.2, 1.0});
            p.lines.push_back({"disorganized x", kDisorganizedColor, dx->smoothed, 2.2, 1.0});
            p.lines.push_back({"disorganized y", kDisorganizedLight, dy->smoothed, 2.2, 1.0});
            plots.push_back({stem + "baseline", std::move(p)});
        }
    }
    return plots;
}

std::string format_comparison_csv(const std::vector<std::pair<std::string, std::vector<ComparisonRow>>>& groups) {
    std::string out =
        "scenario,method,window,organized_mean,organized_windows,disorganized_mean,disorganized_windows,windows,"
        "difference,ordering\n";
    for (const auto& [name, rows] : groups)
        for (const auto& r : rows)
            out += name + "," + to_string(r.method) + "," + std::to_string(r.window) + "," + fmt(r.organized) + "," +
                   std::to_string(r.organized_present) + "," + fmt(r.disorganized) + "," +
                   std::to_string(r.disorganized_present) + "," + std::to_string(r.windows_total) + "," +
                   fmt(difference(r)) + "," + ordering(r) + "\n";
    return out;
}

std::string format_comparison_table(const std::vector<std::pair<std::string, std::vector<ComparisonRow>>>& groups) {
    std::vector<std::vector<std::string>> cells{
        {"scenario", "method", "window", "organized", "disorganized", "difference", "ordering"}};
    auto cell = [](const std::optional<double>& v, std::size_t present, std::size_t total) {
        return (v ? fmt(v) : std::string("missing")) + " (" + std::to_string(present) + "/" + std::to_string(total) +
               ")";
    };
    for (const auto& [name, rows] : groups)
        for (const auto& r : rows)
            cells.push_back({name, to_string(r.method), std::to_string(r.window),
                             cell(r.organized, r.organized_present, r.windows_total),
                             cell(r.disorganized, r.disorganized_present, r.windows_total), fmt(difference(r)),
                             ordering(r)});
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
        out += "|";
        for (std::size_t c = 0; c < row.size(); ++c) out += " " + row[c] + std::string(width[c] - row[c].size(), ' ') + " |";
        out += "\n";
    };
    emit(cells[0]);
    out += "|";
    for (std::size_t w : width) out += std::string(w + 2, '-') + "|";
    out += "\n";
    for (std::size_t k = 1; k < cells.size(); ++k) emit(cells[k]);
    return out;
}

ScenarioConfig reproduce_config(Scenario s, bool organized, const ReproduceOptions& opts) {
    ScenarioConfig c = default_config(s, organized, opts.seed);
    const std::string own = to_string(s) + ".";
    KeyValueFile mine;
    for (const auto& [key, value] : opts.overrides.entries()) {
        if (key == "num_steps") {
            mine.set(key, value);
            continue;
        }
        bool scoped = false;
        for (auto other : kAllScenarios) scoped = scoped || key.rfind(to_string(other) + ".", 0) == 0;
        if (!scoped)
            throw std::invalid_argument("reproduce accepts only num_steps and scenario-qualified keys, got '" + key +
                                        "'");
        if (key.rfind(own, 0) == 0) mine.set(key, value);
    }
    apply_overrides(c, mine);
    if (s == Scenario::ants_adaptation) c.num_agents = 2 * c.ants_adaptation.colony_size;
    if (opts.num_steps) c.num_steps = *opts.num_steps;
    c.validate();
    return c;
}

ReproduceResult reproduce(const ReproduceOptions& opts, const std::filesystem::path& out) {
    namespace fs = std::filesystem;
    struct Job {
        Scenario scenario;
        bool organized;
        ScenarioConfig config;
        std::vector<MetricSeries> series;
    };
    std::vector<Job> jobs;
    for (auto s : kAllScenarios)
        for (bool organized : {true, false}) jobs.push_back({s, organized, reproduce_config(s, organized, opts), {}});

    for (const char* sub : {"trajectories", "metrics", "plots"}) fs::create_directories(out / sub);

    const std::size_t threads = resolve_thread_count(opts.detector.threads);
    const std::size_t outer = std::min(jobs.size(), threads);
    DetectorOptions inner = opts.detector;
    inner.threads = std::max<std::size_t>(1, threads / jobs.size());

    parallel_for(jobs.size(), outer, [&](std::size_t k) {
        Job& job = jobs[k];
        const std::string stem = to_string(job.scenario) + "_" + mode_name(job.organized);
        const SimulationRun run = simulate(job.config);
        const fs::path traj = out / "trajectories" / (stem + ".csv");
        save_trajectory(run.trajectory, traj, {to_string(job.scenario), job.organized, job.config.seed});
        write_event_log(run.events, (out / "trajectories" / (stem + "_events.csv")).string());
        DetectorOptions mine = inner;
        if (mine.dump_dir) mine.dump_dir = *mine.dump_dir / stem;
        job.series = analyze(run.trajectory, opts.windows, kAllMethods, mine);
        write_metrics_csv(job.series, out / "metrics" / (stem + ".csv"));
    });

    ReproduceResult result;
    for (std::size_t k = 0; k < jobs.size(); k += 2) {
        const Job& org = jobs[k];
        const Job& dis = jobs[k + 1];
        const std::string name = to_string(org.scenario);
        for (const auto& p : comparison_plots(name, name, org.series, dis.series, opts.entropy_plot))
            write_svg(p.plot, out / "plots" / (p.stem + ".svg"));
        result.summary.emplace_back(name, compare_series(org.series, dis.series));
    }
    write_text(out / "summary.csv", format_comparison_csv(result.summary));
    write_text(out / "summary.md", format_comparison_table(result.summary));
    return result;
}

}  // namespace comove
