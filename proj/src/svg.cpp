#include "coopdesign/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace coopdesign {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Mapper {
    double x_scale, y_scale;
    double map_x(double x) const { return kMargin + x * x_scale; }
    double map_y(double y) const { return kHeight - kMargin - y * y_scale; }
};

void line(std::string& out, const Mapper& m, double x0, double y0, double x1, double y1,
          const char* stroke, const char* dash = nullptr) {
    out += "<line x1=\"" + fmt(m.map_x(x0)) + "\" y1=\"" + fmt(m.map_y(y0)) + "\" x2=\"" +
           fmt(m.map_x(x1)) + "\" y2=\"" + fmt(m.map_y(y1)) + "\" stroke=\"" + stroke +
           "\" stroke-width=\"1.5\"";
    if (dash) out += std::string(" stroke-dasharray=\"") + dash + "\"";
    out += "/>\n";
}

void text(std::string& out, const Mapper& m, double x, double y, const std::string& label,
          const char* anchor = "middle") {
    out += "<text x=\"" + fmt(m.map_x(x)) + "\" y=\"" + fmt(m.map_y(y)) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"" + anchor + "\">" +
           label + "</text>\n";
}

std::string region_name(Cooperation c) {
    switch (c) {
        case Cooperation::Total: return "total cooperation";
        case Cooperation::OnlyGood: return "good-game cooperation only";
        case Cooperation::OnlyBad: return "bad-game cooperation only";
        case Cooperation::None: return "no cooperation";
    }
    return "";
}

}  // namespace

std::string region_svg(const RegionGeometry& geo,
                       std::optional<std::pair<double, double>> marker) {
    double max_x = geo.x_intercept;
    double max_y = geo.y_intercept;
    if (marker) {
        max_x = std::max(max_x, marker->first);
        max_y = std::max(max_y, marker->second);
    }
    max_x *= 1.25;
    max_y *= 1.25;
    const Mapper m{(kWidth - 2 * kMargin) / max_x, (kHeight - 2 * kMargin) / max_y};

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes.
    line(out, m, 0, 0, max_x, 0, "black");
    line(out, m, 0, 0, 0, max_y, "black");
    text(out, m, max_x * 0.98, -max_y * 0.07, "(d/(1-d)) pB", "end");
    text(out, m, 0.02 * max_x, max_y * 0.97, "(d/(1-d)) pG", "start");

    // Boundaries.
    const auto& total = geo.total_boundary;
    line(out, m, total.x0, total.y0, total.x1, total.y1, "black");
    if (geo.partial_boundary)
        line(out, m, geo.partial_boundary->x0, geo.partial_boundary->y0, geo.partial_boundary->x1,
             geo.partial_boundary->y1, "black", "6,4");

    // Intercept ticks.
    text(out, m, geo.x_intercept, -max_y * 0.05, "maxd/cB");
    text(out, m, -0.01 * max_x, geo.y_intercept, "maxd/cG", "end");

    for (const auto& region : geo.regions) {
        text(out, m, region.x, region.y,
             "region " + std::to_string(region.id) + ": " + region_name(region.outcome));
    }

    if (marker) {
        out += "<circle cx=\"" + fmt(m.map_x(marker->first)) + "\" cy=\"" +
               fmt(m.map_y(marker->second)) + "\" r=\"4\" fill=\"black\"/>\n";
        text(out, m, marker->first + 0.02 * max_x, marker->second, "x", "start");
    }
    out += "</svg>\n";
    return out;
}

}  // namespace coopdesign
