// comove: simulate scenarios, run the organization detectors and compare runs.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "comove/errors.hpp"
#include "comove/keyvalue.hpp"
#include "comove/report.hpp"

namespace fs = std::filesystem;
using namespace comove;

namespace {

/// Usage problems detected after parsing (bad config keys, invalid combinations).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Removes whatever a failed command left behind under its output directory.
/// Files present before the command started are kept.
class OutputGuard {
public:
    explicit OutputGuard(fs::path root) : root_(std::move(root)) {
        existed_ = fs::exists(root_);
        if (existed_)
            for (const auto& e : fs::recursive_directory_iterator(root_)) before_.insert(e.path());
    }
    ~OutputGuard() {
        if (committed_) return;
        std::error_code ec;
        if (!existed_) {
            fs::remove_all(root_, ec);
            return;
        }
        std::vector<fs::path> fresh;
        for (auto it = fs::recursive_directory_iterator(root_, ec); !ec && it != fs::recursive_directory_iterator();
             it.increment(ec))
            if (!before_.count(it->path())) fresh.push_back(it->path());
        // Deepest first so directories are empty by the time they are removed.
        std::sort(fresh.begin(), fresh.end(), [](const fs::path& a, const fs::path& b) { return a > b; });
        for (const auto& p : fresh) fs::remove_all(p, ec);
    }
    OutputGuard(const OutputGuard&) = delete;
    OutputGuard& operator=(const OutputGuard&) = delete;

    void commit() { committed_ = true; }

private:
    fs::path root_;
    bool existed_ = false;
    bool committed_ = false;
    std::set<fs::path> before_;
};

struct Shared {
    std::uint64_t seed = 1;
    std::string out = "out";
    std::string config;
};

struct DetectFlags {
    std::vector<std::string> methods{"all"};
    std::vector<std::size_t> windows{25, 50};
    double eps = 0.01;
    std::size_t min_pts = 5;
    double tau = 0.01;
    std::size_t bins = 32;
    std::size_t smooth_span = 11;
    std::string entropy_variant = "eq9";
    std::string silhouette_space = "features";
    std::string silhouette_noise = "own-cluster";
    std::string frame = "centered";
    bool plot = false;
    std::string dump_windows;
};

/// Config keys a subcommand understands, each tied to the option a flag would set.
using KeyTable = std::map<std::string, CLI::Option*>;

void add_shared(CLI::App* app, Shared& s, KeyTable& keys) {
    keys["seed"] = app->add_option("--seed", s.seed, "Random seed")->capture_default_str();
    keys["out"] = app->add_option("--out", s.out, "Output directory")->capture_default_str();
    app->add_option("--config", s.config, "key=value config file; flags override it")->check(CLI::ExistingFile);
}

void add_detect(CLI::App* app, DetectFlags& d, KeyTable& keys, bool with_methods) {
    if (with_methods)
        keys["detect.method"] =
            app->add_option("--method", d.methods, "Comma list of all, silhouette, entropy, entropy-literal, baseline")
                ->delimiter(',')
                ->check(CLI::IsMember({"all", "silhouette", "entropy", "entropy-literal", "baseline"}))
                ->capture_default_str();
    keys["detect.window"] =
        app->add_option("--window", d.windows, "Comma list of window lengths")->delimiter(',')->capture_default_str();
    keys["detect.eps"] = app->add_option("--eps", d.eps, "DBSCAN radius on M_sim")->capture_default_str();
    keys["detect.min_pts"] =
        app->add_option("--min-pts", d.min_pts, "DBSCAN core size, the point included")->capture_default_str();
    keys["detect.tau"] =
        app->add_option("--tau", d.tau, "Edge threshold on M_sim for the graph entropy")->capture_default_str();
    keys["detect.bins"] = app->add_option("--bins", d.bins, "Histogram bins per axis for the baseline")
                              ->capture_default_str();
    keys["detect.smooth_span"] =
        app->add_option("--smooth-span", d.smooth_span, "Moving-average span (odd)")->capture_default_str();
    keys["detect.entropy_variant"] = app->add_option("--entropy-variant", d.entropy_variant,
                                                     "Graph entropy: eq9 (thresholded graph) or literal (matrix sum)")
                                         ->check(CLI::IsMember({"eq9", "literal"}))
                                         ->capture_default_str();
    keys["detect.silhouette_space"] =
        app->add_option("--silhouette-space", d.silhouette_space, "Silhouette distances: features or msim")
            ->check(CLI::IsMember({"features", "msim"}))
            ->capture_default_str();
    keys["detect.silhouette_noise"] =
        app->add_option("--silhouette-noise", d.silhouette_noise,
                        "DBSCAN noise in the silhouette: own-cluster or exclude")
            ->check(CLI::IsMember({"own-cluster", "exclude"}))
            ->capture_default_str();
    keys["detect.frame"] = app->add_option("--frame", d.frame, "Window vector origin: centered, raw or centroid")
                               ->check(CLI::IsMember({"centered", "raw", "centroid"}))
                               ->capture_default_str();
    keys["detect.plot"] = app->add_flag("--plot", d.plot, "Also write SVG line plots");
    keys["detect.dump_windows"] =
        app->add_option("--dump-windows", d.dump_windows, "Directory for per-window M_sim and label dumps");
}

/// Feeds config values to options that were not given on the command line.
/// Keys outside `keys` are handed to `extra`, which may reject them.
void apply_config(const std::string& path, const KeyTable& keys,
                  const std::function<void(const std::string&, const std::string&)>& extra) {
    if (path.empty()) return;
    const KeyValueFile kv = KeyValueFile::read(path);
    for (const auto& [key, value] : kv.entries()) {
        const auto it = keys.find(key);
        if (it == keys.end()) {
            extra(key, value);
            continue;
        }
        CLI::Option* opt = it->second;
        if (opt->count() != 0) continue;
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError(path + ": " + key + ": " + e.what());
        }
    }
}

void reject_key(const std::string& key, const std::string&) {
    throw UsageError("unknown config key '" + key + "'");
}

DetectorOptions detector_options(const DetectFlags& d) {
    DetectorOptions o;
    o.dbscan.eps = d.eps;
    o.dbscan.min_pts = d.min_pts;
    o.dbscan.validate();
    o.tau = d.tau;
    o.histogram_bins = d.bins;
    o.smooth_span = d.smooth_span;
    o.silhouette_space = parse_silhouette_space(d.silhouette_space);
    o.noise = parse_noise_policy(d.silhouette_noise);
    o.frame = parse_coordinate_frame(d.frame);
    if (!d.dump_windows.empty()) o.dump_dir = fs::path(d.dump_windows);
    if (d.windows.empty()) throw UsageError("--window needs at least one length");
    return o;
}

Method entropy_method(const DetectFlags& d) {
    return d.entropy_variant == "literal" ? Method::graph_entropy_literal : Method::graph_entropy;
}

std::vector<Method> selected_methods(const DetectFlags& d) {
    std::vector<Method> out;
    auto add = [&](Method m) {
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    };
    for (const auto& name : d.methods) {
        if (name == "all" || name == "silhouette") add(Method::silhouette);
        if (name == "all" || name == "entropy") add(entropy_method(d));
        if (name == "entropy-literal") add(Method::graph_entropy_literal);
        if (name == "all" || name == "baseline") add(Method::baseline_x);
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

void write_plots(const std::vector<NamedPlot>& plots, const fs::path& dir, const std::string& prefix) {
    for (const auto& p : plots) write_svg(p.plot, dir / (prefix + p.stem + ".svg"));
}

// ---- simulate ----

struct SimulateArgs {
    Shared shared;
    std::string scenario;
    bool organized = false;
    bool disorganized = false;
    std::size_t steps = 0;
    std::vector<std::string> sets;
    KeyTable keys;
    CLI::Option* scenario_opt = nullptr;
    CLI::Option* steps_opt = nullptr;
};

int run_simulate(SimulateArgs& a) {
    KeyValueFile file_kv;
    apply_config(a.shared.config, a.keys, [&](const std::string& k, const std::string& v) {
        if (k.rfind("detect.", 0) != 0) file_kv.set(k, v);
    });
    if (a.scenario.empty() && !file_kv.has("scenario"))
        throw UsageError("--scenario is required (ants, wolf_sheep, flocking or ants_adaptation)");
    const Scenario s = parse_scenario(a.scenario.empty() ? file_kv.get("scenario") : a.scenario);
    bool organized = file_kv.has("organized") ? file_kv.get_bool("organized") : true;
    if (a.organized) organized = true;
    if (a.disorganized) organized = false;

    ScenarioConfig c = default_config(s, organized, a.shared.seed);
    KeyValueFile overrides = file_kv;
    overrides.set("scenario", to_string(s));
    overrides.set("organized", organized ? "true" : "false");
    overrides.set("seed", std::to_string(a.shared.seed));
    for (const auto& assignment : a.sets) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + assignment + "'");
        const std::string_view text(assignment);
        overrides.set(std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1))));
    }
    if (a.steps_opt->count() != 0) overrides.set("num_steps", std::to_string(a.steps));
    if (s == Scenario::ants_adaptation && overrides.has("ants_adaptation.colony_size") && !overrides.has("num_agents"))
        overrides.set("num_agents", std::to_string(2 * overrides.get_uint("ants_adaptation.colony_size")));
    apply_overrides(c, overrides);
    c.validate();

    const fs::path out(a.shared.out);
    OutputGuard guard(out);
    fs::create_directories(out);
    const std::string stem = to_string(s) + "_" + mode_name(organized);
    const SimulationRun run = simulate(c);
    save_trajectory(run.trajectory, out / (stem + ".csv"), {to_string(s), organized, c.seed});
    write_event_log(run.events, (out / (stem + "_events.csv")).string());
    std::string cfg;
    const KeyValueFile resolved = config_to_key_values(c);
    for (const auto& [k, v] : resolved.entries()) cfg += k + "=" + v + "\n";
    write_text(out / (stem + ".cfg"), cfg);
    guard.commit();
    std::printf("wrote %s (%zu agents x %zu steps, %zu events)\n", (out / (stem + ".csv")).string().c_str(),
                run.trajectory.num_agents(), run.trajectory.num_steps(), run.events.size());
    return 0;
}

// ---- detect ----

struct DetectArgs {
    Shared shared;
    DetectFlags flags;
    std::string input;
    KeyTable keys;
};

int run_detect(DetectArgs& a) {
    apply_config(a.shared.config, a.keys, [](const std::string& k, const std::string& v) {
        if (k.rfind("detect.", 0) == 0) reject_key(k, v);
    });
    const DetectorOptions opts = detector_options(a.flags);
    const auto methods = selected_methods(a.flags);
    const TrajectoryTensor t = load_trajectory(a.input);

    const fs::path out(a.shared.out);
    OutputGuard guard(out);
    fs::create_directories(out);
    const std::string stem = fs::path(a.input).stem().string();
    const auto series = analyze(t, a.flags.windows, methods, opts);
    const fs::path csv = out / (stem + "_metrics.csv");
    write_metrics_csv(series, csv);
    if (a.flags.plot) write_plots(series_plots(stem, series, entropy_method(a.flags)), out, stem + "_");
    guard.commit();

    std::printf("wrote %s (%zu series)\n", csv.string().c_str(), series.size());
    for (const auto& s : series)
        std::printf("  %-22s window %-4zu mean %s (%zu of %zu windows)\n", to_string(s.method).c_str(),
                    s.window_length,
                    present_mean(s.values) ? std::to_string(*present_mean(s.values)).c_str() : "missing",
                    present_count(s.values), s.size());
    return 0;
}

// ---- compare ----

struct CompareArgs {
    Shared shared;
    DetectFlags flags;
    std::string organized;
    std::string disorganized;
    KeyTable keys;
};

int run_compare(CompareArgs& a) {
    apply_config(a.shared.config, a.keys, [](const std::string& k, const std::string& v) {
        if (k.rfind("detect.", 0) == 0) reject_key(k, v);
    });
    const DetectorOptions opts = detector_options(a.flags);
    const auto methods = selected_methods(a.flags);
    const TrajectoryTensor org = load_trajectory(a.organized);
    const TrajectoryTensor dis = load_trajectory(a.disorganized);

    const fs::path out(a.shared.out);
    OutputGuard guard(out);
    fs::create_directories(out);
    const auto org_series = analyze(org, a.flags.windows, methods, opts);
    const auto dis_series = analyze(dis, a.flags.windows, methods, opts);
    write_metrics_csv(org_series, out / "organized_metrics.csv");
    write_metrics_csv(dis_series, out / "disorganized_metrics.csv");
    write_plots(comparison_plots("comparison", "comparison", org_series, dis_series, entropy_method(a.flags)), out,
                "");
    const std::vector<std::pair<std::string, std::vector<ComparisonRow>>> groups{
        {"comparison", compare_series(org_series, dis_series)}};
    write_text(out / "summary.csv", format_comparison_csv(groups));
    const std::string table = format_comparison_table(groups);
    write_text(out / "summary.md", table);
    guard.commit();
    std::fputs(table.c_str(), stdout);
    return 0;
}

// ---- reproduce ----

struct ReproduceArgs {
    Shared shared;
    DetectFlags flags;
    std::size_t steps = 0;
    CLI::Option* steps_opt = nullptr;
    KeyTable keys;
};

int run_reproduce(ReproduceArgs& a) {
    ReproduceOptions r;
    apply_config(a.shared.config, a.keys, [&](const std::string& k, const std::string& v) {
        if (k.rfind("detect.", 0) == 0) reject_key(k, v);
        r.overrides.set(k, v);
    });
    r.seed = a.shared.seed;
    if (a.steps_opt->count() != 0) {
        r.num_steps = a.steps;
    } else if (r.overrides.has("num_steps")) {
        r.num_steps = r.overrides.get_uint("num_steps");
    }
    r.windows = a.flags.windows;
    r.detector = detector_options(a.flags);
    r.entropy_plot = entropy_method(a.flags);
    for (auto s : kAllScenarios) reproduce_config(s, true, r);  // reject bad keys before touching the disk

    const fs::path out(a.shared.out);
    OutputGuard guard(out);
    const ReproduceResult result = reproduce(r, out);
    guard.commit();
    std::fputs(format_comparison_table(result.summary).c_str(), stdout);
    std::printf("wrote %s\n", out.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detect organized collective motion in agent trajectories."};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run one scenario and write its trajectory");
    add_shared(sim_cmd, sim.shared, sim.keys);
    sim.scenario_opt = sim_cmd->add_option("--scenario", sim.scenario, "ants, wolf_sheep, flocking or ants_adaptation")
                           ->check(CLI::IsMember({"ants", "wolf_sheep", "flocking", "ants_adaptation"}));
    auto* org_flag = sim_cmd->add_flag("--organized", sim.organized, "Collaborative behaviour (default)");
    sim_cmd->add_flag("--disorganized", sim.disorganized, "Independent agents")->excludes(org_flag);
    sim.steps_opt = sim_cmd->add_option("--steps", sim.steps, "Number of ticks (default 500)");
    sim_cmd->add_option("--set", sim.sets, "Scenario parameter override key=value (repeatable)");

    DetectArgs det;
    auto* det_cmd = app.add_subcommand("detect", "Run detectors on a trajectory CSV");
    add_shared(det_cmd, det.shared, det.keys);
    det_cmd->add_option("--input", det.input, "Trajectory CSV (step,agent,x,y)")->required()->check(CLI::ExistingFile);
    add_detect(det_cmd, det.flags, det.keys, true);

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "Detect on an organized and a disorganized run and compare them");
    add_shared(cmp_cmd, cmp.shared, cmp.keys);
    cmp_cmd->add_option("--organized", cmp.organized, "Organized trajectory CSV")->required()->check(CLI::ExistingFile);
    cmp_cmd->add_option("--disorganized", cmp.disorganized, "Disorganized trajectory CSV")
        ->required()
        ->check(CLI::ExistingFile);
    add_detect(cmp_cmd, cmp.flags, cmp.keys, true);

    ReproduceArgs rep;
    auto* rep_cmd = app.add_subcommand("reproduce", "Simulate all scenarios in both modes, detect, plot, summarize");
    add_shared(rep_cmd, rep.shared, rep.keys);
    rep.steps_opt = rep_cmd->add_option("--steps", rep.steps, "Number of ticks per run (default 500)");
    add_detect(rep_cmd, rep.flags, rep.keys, false);

    CLI11_PARSE(app, argc, argv);

    CLI::App* active = app.get_subcommands().front();
    try {
        if (active == sim_cmd) return run_simulate(sim);
        if (active == det_cmd) return run_detect(det);
        if (active == cmp_cmd) return run_compare(cmp);
        return run_reproduce(rep);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\nRun 'comove %s --help' for usage.\n", e.what(), active->get_name().c_str());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\nRun 'comove %s --help' for usage.\n", e.what(), active->get_name().c_str());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
