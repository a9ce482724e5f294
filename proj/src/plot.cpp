#include "comove/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace comove {

namespace {

constexpr double kWidth = 760, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 55;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
double tick_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

std::string tick_label(double v, double step) {
    char buf[32];
    const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step)));
    std::snprintf(buf, sizeof buf, "%.*f", decimals, std::abs(v) < step * 1e-9 ? 0.0 : v);
    return buf;
}

}  // namespace

std::string render_svg(const LinePlot& plot) {
    double lo = INFINITY, hi = -INFINITY;
    std::size_t length = 1;
    for (const auto& line : plot.lines) {
        length = std::max(length, line.values.size());
        for (const auto& v : line.values) {
            if (!v) continue;
            lo = std::min(lo, *v);
            hi = std::max(hi, *v);
        }
    }
    if (lo > hi) {
        lo = 0.0;
        hi = 1.0;
    } else if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    } else {
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    const double x_max = static_cast<double>(std::max<std::size_t>(length - 1, 1));
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + x / x_max * pw; };
    auto sy = [&](double y) { return kTop + (hi - y) / (hi - lo) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
           escape(plot.title) + "</text>\n";

    const double ystep = tick_step(hi - lo, 6);
    for (double y = std::ceil(lo / ystep) * ystep; y <= hi + ystep * 1e-9; y += ystep) {
        svg += "<line x1=\"" + num(kLeft) + "\" x2=\"" + num(kLeft + pw) + "\" y1=\"" + num(sy(y)) + "\" y2=\"" +
               num(sy(y)) + "\" stroke=\"#e4e4e4\"/>\n";
        svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(sy(y) + 4) + "\" text-anchor=\"end\">" +
               tick_label(y, ystep) + "</text>\n";
    }
    const double xstep = tick_step(x_max, 8);
    for (double x = 0.0; x <= x_max + xstep * 1e-9; x += xstep) {
        svg += "<line x1=\"" + num(sx(x)) + "\" x2=\"" + num(sx(x)) + "\" y1=\"" + num(kTop + ph) + "\" y2=\"" +
               num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(sx(x)) + "\" y=\"" + num(kTop + ph + 19) + "\" text-anchor=\"middle\">" +
               tick_label(x, xstep) + "</text>\n";
    }
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" +
           escape(plot.x_label) + "</text>\n";
    svg += "<text transform=\"translate(18 " + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
           escape(plot.y_label) + "</text>\n";

    for (const auto& line : plot.lines) {
        std::string points;
        std::size_t count = 0;
        double last_x = 0.0, last_y = 0.0;
        auto flush = [&] {
            if (count == 1)
                svg += "<circle cx=\"" + num(last_x) + "\" cy=\"" + num(last_y) + "\" r=\"" + num(line.width) +
                       "\" fill=\"" + escape(line.color) + "\" fill-opacity=\"" + num(line.opacity) + "\"/>\n";
            else if (count > 1)
                svg += "<polyline fill=\"none\" stroke=\"" + escape(line.color) + "\" stroke-width=\"" +
                       num(line.width) + "\" stroke-opacity=\"" + num(line.opacity) + "\" points=\"" + points +
                       "\"/>\n";
            points.clear();
            count = 0;
        };
        for (std::size_t k = 0; k < line.values.size(); ++k) {
            if (!line.values[k]) {
                flush();
                continue;
            }
            if (!points.empty()) points += ' ';
            last_x = sx(static_cast<double>(k));
            last_y = sy(*line.values[k]);
            points += num(last_x) + "," + num(last_y);
            ++count;
        }
        flush();
    }

    double ly = kTop + 10;
    for (const auto& line : plot.lines) {
        if (line.label.empty()) continue;
        const double lx = kLeft + pw + 14;
        svg += "<line x1=\"" + num(lx) + "\" x2=\"" + num(lx + 22) + "\" y1=\"" + num(ly) + "\" y2=\"" + num(ly) +
               "\" stroke=\"" + escape(line.color) + "\" stroke-width=\"2.5\"/>\n";
        svg += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(ly + 4) + "\">" + escape(line.label) + "</text>\n";
        ly += 20;
    }
    svg += "</svg>\n";
    return svg;
}

void write_svg(const LinePlot& plot, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << render_svg(plot);
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace comove
