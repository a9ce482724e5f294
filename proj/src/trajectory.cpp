#include "comove/trajectory.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string_view>

#include "comove/errors.hpp"
#include "comove/keyvalue.hpp"

namespace comove {

std::string to_string(Topology t) { return t == Topology::toroidal ? "toroidal" : "bounded"; }

Topology parse_topology(const std::string& s) {
    if (s == "bounded") return Topology::bounded;
    if (s == "toroidal") return Topology::toroidal;
    throw std::invalid_argument("unknown topology '" + s + "'");
}

void WorldSpec::validate() const {
    if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height))
        throw std::invalid_argument("world extents must be positive");
}

bool WorldSpec::contains(Point p) const noexcept {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0.0 || p.y < 0.0) return false;
    if (topology == Topology::toroidal) return p.x < width && p.y < height;
    return p.x <= width && p.y <= height;
}

TrajectoryTensor::TrajectoryTensor(std::size_t num_agents, std::size_t num_steps, WorldSpec world,
                                   std::vector<Point> positions)
    : num_agents_(num_agents), num_steps_(num_steps), world_(world), positions_(std::move(positions)) {
    if (num_agents_ == 0 || num_steps_ == 0)
        throw std::invalid_argument("trajectory needs at least one agent and one step");
    world_.validate();
    if (positions_.size() != num_agents_ * num_steps_)
        throw std::invalid_argument("position count does not match num_steps x num_agents");
    for (std::size_t k = 0; k < positions_.size(); ++k) {
        if (!world_.contains(positions_[k]))
            throw std::invalid_argument("agent " + std::to_string(k % num_agents_) + " at step " +
                                        std::to_string(k / num_agents_) + " lies outside the world");
    }
}

double quantize_coordinate(double v) noexcept { return std::round(v * 1e6) / 1e6; }

std::filesystem::path metadata_path(const std::filesystem::path& trajectory_path) {
    auto p = trajectory_path;
    p.replace_extension(".meta");
    return p;
}

namespace {

std::string_view next_field(std::string_view& line) {
    const auto comma = line.find(',');
    auto field = line.substr(0, comma);
    line = comma == std::string_view::npos ? std::string_view{} : line.substr(comma + 1);
    return trim(field);
}

template <class T>
T field_value(std::string_view field, const std::string& source, std::size_t line, const char* name) {
    T value{};
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end)
        throw ParseError(source, line, std::string("invalid ") + name + " '" + std::string(field) + "'");
    return value;
}

void append_fixed6(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    if (ec != std::errc{}) throw std::runtime_error("coordinate formatting failed");
    out.append(buf, ptr);
}

}  // namespace

std::optional<RunMetadata> load_metadata(const std::filesystem::path& trajectory_path) {
    const auto mp = metadata_path(trajectory_path);
    if (!std::filesystem::exists(mp)) return std::nullopt;
    const auto kv = KeyValueFile::read(mp);
    RunMetadata meta;
    if (kv.has("scenario")) meta.scenario = kv.get("scenario");
    if (kv.has("organized")) meta.organized = kv.get_bool("organized");
    if (kv.has("seed")) meta.seed = kv.get_uint("seed");
    return meta;
}

TrajectoryTensor load_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const std::string source = path.string();

    std::string raw;
    std::size_t line_no = 1;
    if (!std::getline(in, raw)) throw ParseError(source, 1, "empty file");
    {
        std::string_view header = trim(raw);
        if (header != "step,agent,x,y") throw ParseError(source, 1, "expected header 'step,agent,x,y'");
    }

    std::vector<std::int64_t> agent_ids;  // file order, fixed by the first step
    std::vector<Point> positions;
    std::int64_t current_step = 0;
    std::size_t steps = 0;
    std::size_t in_step = 0;
    double max_x = 0.0, max_y = 0.0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        const auto step = field_value<std::int64_t>(next_field(line), source, line_no, "step");
        const auto agent = field_value<std::int64_t>(next_field(line), source, line_no, "agent");
        const Point p{field_value<double>(next_field(line), source, line_no, "x"),
                      field_value<double>(next_field(line), source, line_no, "y")};
        if (!line.empty()) throw ParseError(source, line_no, "too many fields");
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ParseError(source, line_no, "non-finite coordinate");

        if (steps == 0) {
            steps = 1;
            current_step = step;
        } else if (step == current_step + 1) {
            if (in_step != agent_ids.size())
                throw ParseError(source, line_no, "ragged data: step " + std::to_string(current_step) + " has " +
                                                      std::to_string(in_step) + " of " +
                                                      std::to_string(agent_ids.size()) + " agents");
            ++steps;
            current_step = step;
            in_step = 0;
        } else if (step != current_step) {
            throw ParseError(source, line_no, "non-monotone or non-contiguous step index " + std::to_string(step) +
                                                  " after " + std::to_string(current_step));
        }

        if (steps == 1) {
            for (auto id : agent_ids)
                if (id == agent) throw ParseError(source, line_no, "duplicate agent " + std::to_string(agent));
            agent_ids.push_back(agent);
        } else if (in_step >= agent_ids.size() || agent_ids[in_step] != agent) {
            throw ParseError(source, line_no, "ragged data: expected agent " +
                                                  (in_step < agent_ids.size() ? std::to_string(agent_ids[in_step])
                                                                              : std::string("<none>")) +
                                                  " at step " + std::to_string(step) + ", found " +
                                                  std::to_string(agent));
        }
        ++in_step;
        positions.push_back(p);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    if (steps == 0) throw ParseError(source, line_no, "no data rows");
    if (in_step != agent_ids.size())
        throw ParseError(source, line_no, "ragged data: final step " + std::to_string(current_step) + " has " +
                                              std::to_string(in_step) + " of " + std::to_string(agent_ids.size()) +
                                              " agents");

    WorldSpec world{std::max(1.0, std::ceil(max_x)), std::max(1.0, std::ceil(max_y)), Topology::bounded};
    const auto mp = metadata_path(path);
    if (std::filesystem::exists(mp)) {
        const auto kv = KeyValueFile::read(mp);
        world.width = kv.get_double("world_width");
        world.height = kv.get_double("world_height");
        world.topology = parse_topology(kv.get("topology"));
        if (kv.has("num_agents") && kv.get_uint("num_agents") != agent_ids.size())
            throw std::invalid_argument(mp.string() + ": num_agents disagrees with trajectory data");
        if (kv.has("num_steps") && kv.get_uint("num_steps") != steps)
            throw std::invalid_argument(mp.string() + ": num_steps disagrees with trajectory data");
    }
    return TrajectoryTensor(agent_ids.size(), steps, world, std::move(positions));
}

void save_trajectory(const TrajectoryTensor& t, const std::filesystem::path& path, const RunMetadata& meta) {
    std::string out = "step,agent,x,y\n";
    out.reserve(out.size() + t.num_steps() * t.num_agents() * 32);
    for (std::size_t s = 0; s < t.num_steps(); ++s) {
        for (std::size_t a = 0; a < t.num_agents(); ++a) {
            const Point p = t.at(s, a);
            out += std::to_string(s);
            out += ',';
            out += std::to_string(a);
            out += ',';
            append_fixed6(out, p.x);
            out += ',';
            append_fixed6(out, p.y);
            out += '\n';
        }
    }
    {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        f << out;
        if (!f) throw std::runtime_error("write failed: " + path.string());
    }

    std::string m;
    m += "num_agents=" + std::to_string(t.num_agents()) + "\n";
    m += "num_steps=" + std::to_string(t.num_steps()) + "\n";
    m += "world_width=";
    append_fixed6(m, t.world().width);
    m += "\nworld_height=";
    append_fixed6(m, t.world().height);
    m += "\ntopology=" + to_string(t.world().topology) + "\n";
    m += "scenario=" + meta.scenario + "\n";
    m += std::string("organized=") + (meta.organized ? "true" : "false") + "\n";
    m += "seed=" + std::to_string(meta.seed) + "\n";
    std::ofstream mf(metadata_path(path), std::ios::binary);
    if (!mf) throw std::runtime_error("cannot write " + metadata_path(path).string());
    mf << m;
    if (!mf) throw std::runtime_error("write failed: " + metadata_path(path).string());
}

WindowSlice::WindowSlice(std::size_t start, std::size_t length, std::size_t num_agents, std::vector<double> features)
    : start_(start), length_(length), num_agents_(num_agents), features_(std::move(features)) {
    if (features_.size() != num_agents_ * 2 * length_)
        throw std::invalid_argument("window feature storage has the wrong size");
}

WindowSlice extract_window(const TrajectoryTensor& t, std::size_t start, std::size_t length) {
    if (length < 2) throw std::out_of_range("window length must be at least 2");
    if (start > t.num_steps() || length > t.num_steps() - start)
        throw std::out_of_range("window [" + std::to_string(start) + ", " + std::to_string(start + length) +
                                ") exceeds run of " + std::to_string(t.num_steps()) + " steps");
    const std::size_t n = t.num_agents();
    const std::size_t dim = 2 * length;
    std::vector<double> features(n * dim);
    for (std::size_t k = 0; k < length; ++k) {
        const auto row = t.step(start + k);
        for (std::size_t a = 0; a < n; ++a) {
            features[a * dim + k] = row[a].x;
            features[a * dim + length + k] = row[a].y;
        }
    }
    return WindowSlice(start, length, n, std::move(features));
}

}  // namespace comove
