#include "comove/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "comove/baseline.hpp"
#include "comove/graph_entropy.hpp"
#include "comove/similarity.hpp"

namespace comove {

std::size_t resolve_thread_count(std::size_t requested) {
    std::size_t n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COMOVE_THREADS")) {
        std::size_t cap = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
        if (ec == std::errc{} && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
    }
    return n;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
    threads = std::min(threads == 0 ? std::size_t{1} : threads, n);
    if (threads <= 1) {
        for (std::size_t k = 0; k < n; ++k) body(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < n; k = next++) {
                    try {
                        body(k);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = n;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

std::string_view to_string(CoordinateFrame f) noexcept {
    switch (f) {
        case CoordinateFrame::raw: return "raw";
        case CoordinateFrame::world_centered: return "centered";
        case CoordinateFrame::window_centroid: return "centroid";
    }
    return "centered";
}

CoordinateFrame parse_coordinate_frame(std::string_view text) {
    if (text == "raw") return CoordinateFrame::raw;
    if (text == "centered") return CoordinateFrame::world_centered;
    if (text == "centroid") return CoordinateFrame::window_centroid;
    throw std::invalid_argument("unknown coordinate frame '" + std::string(text) +
                                "' (expected raw, centered or centroid)");
}

std::string_view to_string(SilhouetteSpace s) noexcept {
    return s == SilhouetteSpace::features ? "features" : "msim";
}

SilhouetteSpace parse_silhouette_space(std::string_view text) {
    if (text == "features") return SilhouetteSpace::features;
    if (text == "msim") return SilhouetteSpace::msim;
    throw std::invalid_argument("unknown silhouette space '" + std::string(text) + "' (expected features or msim)");
}

WindowSlice framed_window(const TrajectoryTensor& t, std::size_t start, std::size_t length, CoordinateFrame frame) {
    WindowSlice w = extract_window(t, start, length);
    if (frame == CoordinateFrame::raw) return w;
    double cx = t.world().width / 2, cy = t.world().height / 2;
    if (frame == CoordinateFrame::window_centroid) {
        double sx = 0.0, sy = 0.0;
        for (std::size_t a = 0; a < w.num_agents(); ++a) {
            const auto v = w.agent(a);
            for (std::size_t k = 0; k < length; ++k) {
                sx += v[k];
                sy += v[k + length];
            }
        }
        const double count = static_cast<double>(w.num_agents() * length);
        cx = sx / count;
        cy = sy / count;
    }
    std::vector<double> features;
    features.reserve(w.num_agents() * w.dimension());
    for (std::size_t a = 0; a < w.num_agents(); ++a) {
        const auto v = w.agent(a);
        for (std::size_t k = 0; k < length; ++k) features.push_back(v[k] - cx);
        for (std::size_t k = length; k < 2 * length; ++k) features.push_back(v[k] - cy);
    }
    return WindowSlice(start, length, w.num_agents(), std::move(features));
}

namespace {

void check_window(const TrajectoryTensor& t, std::size_t window) {
    if (window < 2) throw std::invalid_argument("window length must be at least 2");
    if (window >= t.num_steps())
        throw std::invalid_argument("window length " + std::to_string(window) + " must be below the run length " +
                                    std::to_string(t.num_steps()));
}

struct WindowOutput {
    std::optional<double> silhouette;
    std::optional<double> entropy;
    std::optional<double> literal;
};

struct Wanted {
    bool silhouette = false;
    bool entropy = false;
    bool literal = false;
};

WindowOutput analyze_window(const TrajectoryTensor& t, std::size_t start, std::size_t window,
                            const DetectorOptions& opts, Wanted wanted) {
    const WindowSlice slice = framed_window(t, start, window, opts.frame);
    const SimilarityPair pair = similarity_pair(slice);
    const DissimilarityMatrix msim = combine(pair);
    WindowOutput out;
    if (wanted.silhouette) {
        const ClusterLabeling labels = dbscan(msim, opts.dbscan);
        out.silhouette = opts.silhouette_space == SilhouetteSpace::features
                             ? silhouette(pair.distance, labels, opts.noise).overall
                             : silhouette(msim, labels, opts.noise).overall;
        if (opts.dump_dir) {
            const std::string stem = "w" + std::to_string(window) + "_s" + std::to_string(start);
            write_labels_csv(labels, *opts.dump_dir / (stem + "_labels.csv"));
        }
    }
    if (wanted.entropy) out.entropy = network_entropy(threshold_graph(msim, opts.tau)).network;
    if (wanted.literal) out.literal = literal_matrix_entropy(msim);
    if (opts.dump_dir) {
        const std::string stem = "w" + std::to_string(window) + "_s" + std::to_string(start);
        write_matrix_csv(msim.matrix(), *opts.dump_dir / (stem + "_msim.csv"));
    }
    return out;
}

std::vector<WindowOutput> analyze_all(const TrajectoryTensor& t, std::size_t window, const DetectorOptions& opts,
                                      Wanted wanted) {
    check_window(t, window);
    opts.dbscan.validate();
    if ((wanted.entropy || wanted.literal) && t.num_agents() < 3)
        throw std::invalid_argument("graph entropy needs at least 3 agents, got " + std::to_string(t.num_agents()));
    if (wanted.entropy && !(opts.tau > 0.0 && opts.tau <= 1.0))
        throw std::invalid_argument("threshold tau must lie in (0, 1]");
    if (opts.dump_dir) std::filesystem::create_directories(*opts.dump_dir);
    std::vector<WindowOutput> out(window_count(t.num_steps(), window));
    parallel_for(out.size(), resolve_thread_count(opts.threads),
                 [&](std::size_t k) { out[k] = analyze_window(t, k, window, opts, wanted); });
    return out;
}

}  // namespace

MetricSeries run_silhouette_pipeline(const TrajectoryTensor& t, std::size_t window, const DetectorOptions& opts) {
    MetricSeries s{Method::silhouette, window, {}, {}, {}};
    for (const auto& w : analyze_all(t, window, opts, {.silhouette = true})) s.values.push_back(w.silhouette);
    return s;
}

MetricSeries run_entropy_pipeline(const TrajectoryTensor& t, std::size_t window, const DetectorOptions& opts,
                                  bool literal) {
    MetricSeries s{literal ? Method::graph_entropy_literal : Method::graph_entropy, window, {}, {}, {}};
    const Wanted wanted{.entropy = !literal, .literal = literal};
    for (const auto& w : analyze_all(t, window, opts, wanted)) s.values.push_back(literal ? w.literal : w.entropy);
    return s;
}

std::vector<MetricSeries> run_detectors(const TrajectoryTensor& t, std::size_t window,
                                        const std::vector<Method>& methods, const DetectorOptions& opts) {
    auto wants = [&](Method m) { return std::find(methods.begin(), methods.end(), m) != methods.end(); };
    const Wanted wanted{wants(Method::silhouette), wants(Method::graph_entropy), wants(Method::graph_entropy_literal)};
    const bool baseline = wants(Method::baseline_x) || wants(Method::baseline_y);
    check_window(t, window);

    std::vector<MetricSeries> out;
    if (wanted.silhouette || wanted.entropy || wanted.literal) {
        const auto windows = analyze_all(t, window, opts, wanted);
        auto collect = [&](Method m, auto field) {
            MetricSeries s{m, window, {}, {}, {}};
            s.values.reserve(windows.size());
            for (const auto& w : windows) s.values.push_back(w.*field);
            out.push_back(smooth(std::move(s), opts.smooth_span));
        };
        if (wanted.silhouette) collect(Method::silhouette, &WindowOutput::silhouette);
        if (wanted.entropy) collect(Method::graph_entropy, &WindowOutput::entropy);
        if (wanted.literal) collect(Method::graph_entropy_literal, &WindowOutput::literal);
    }
    if (baseline) {
        auto [xs, ys] = baseline_series(t, window, opts.histogram_bins);
        out.push_back(smooth(std::move(xs), opts.smooth_span));
        out.push_back(smooth(std::move(ys), opts.smooth_span));
    }
    return out;
}

void write_matrix_csv(const SquareMatrix& m, const std::filesystem::path& path) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out += ',';
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, m(i, j));
            out.append(buf, ptr);
        }
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << out;
}

void write_labels_csv(const ClusterLabeling& labels, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << "agent,label,role\n";
    for (std::size_t i = 0; i < labels.labels.size(); ++i) {
        const char* role = labels.roles[i] == PointRole::core ? "core"
                           : labels.roles[i] == PointRole::border ? "border"
                                                                  : "noise";
        f << i << ',' << labels.labels[i] << ',' << role << '\n';
    }
}

}  // namespace comove
