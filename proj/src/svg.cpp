#include "lockin/svg.hpp"

#include "lockin/errors.hpp"
#include "lockin/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace lockin {

namespace {

// Layout constants, pixels. The plot area scales with the grid but is
// clamped so tiny maps still render legibly.
constexpr double margin_left = 64.0;
constexpr double margin_bottom = 46.0;
constexpr double margin_top = 14.0;
constexpr double margin_right = 14.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

std::string heatmap_svg(const TongueMap& map, const std::string& channel) {
    const std::vector<double>& values = map.channel(channel);
    const std::size_t nx = map.nx(), ny = map.ny();

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (std::isnan(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const bool all_nan = !(lo <= hi);
    const double span = (hi > lo) ? hi - lo : 1.0;

    const double cell = std::clamp(520.0 / static_cast<double>(std::max(nx, ny)),
                                   4.0, 48.0);
    const double plot_w = cell * static_cast<double>(nx);
    const double plot_h = cell * static_cast<double>(ny);
    const double width = margin_left + plot_w + margin_right;
    const double height = margin_top + plot_h + margin_bottom;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
           "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " +
           fmt(height) + "\">\n";
    svg += "<defs><pattern id=\"nanhatch\" width=\"6\" height=\"6\" "
           "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
           "<rect width=\"6\" height=\"6\" fill=\"#f4f4f4\"/>"
           "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#c04040\" "
           "stroke-width=\"2\"/></pattern></defs>\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Cells. y axis points up: row iy = 0 sits at the bottom of the plot.
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = values[iy * nx + ix];
            const double px = margin_left + cell * static_cast<double>(ix);
            const double py = margin_top + plot_h - cell * static_cast<double>(iy + 1);
            std::string fill;
            if (std::isnan(v)) {
                fill = "url(#nanhatch)";
            } else {
                const double t = all_nan ? 0.0 : (v - lo) / span; // 0 white, 1 black
                const int g = static_cast<int>(std::lround(255.0 * (1.0 - t)));
                char col[16];
                std::snprintf(col, sizeof col, "#%02x%02x%02x", g, g, g);
                fill = col;
            }
            svg += "<rect x=\"" + fmt(px) + "\" y=\"" + fmt(py) + "\" width=\"" +
                   fmt(cell) + "\" height=\"" + fmt(cell) + "\" fill=\"" + fill +
                   "\"/>\n";
        }
    }

    svg += "<rect x=\"" + fmt(margin_left) + "\" y=\"" + fmt(margin_top) +
           "\" width=\"" + fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Up to 5 ticks per axis at cell centres spread across the range.
    const auto ticks_for = [](std::size_t n) {
        std::vector<std::size_t> idx;
        const std::size_t want = std::min<std::size_t>(5, n);
        for (std::size_t k = 0; k < want; ++k)
            idx.push_back(want == 1 ? 0 : k * (n - 1) / (want - 1));
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        return idx;
    };
    for (std::size_t ix : ticks_for(nx)) {
        const double px = margin_left + cell * (static_cast<double>(ix) + 0.5);
        const double py = margin_top + plot_h;
        svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(px) +
               "\" y2=\"" + fmt(py + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(py + 18) +
               "\" font-family=\"sans-serif\" font-size=\"11\" "
               "text-anchor=\"middle\">" + tick_label(map.x_values[ix]) + "</text>\n";
    }
    for (std::size_t iy : ticks_for(ny)) {
        const double px = margin_left;
        const double py = margin_top + plot_h - cell * (static_cast<double>(iy) + 0.5);
        svg += "<line x1=\"" + fmt(px - 5) + "\" y1=\"" + fmt(py) + "\" x2=\"" +
               fmt(px) + "\" y2=\"" + fmt(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt(px - 8) + "\" y=\"" + fmt(py + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" "
               "text-anchor=\"end\">" + tick_label(map.y_values[iy]) + "</text>\n";
    }

    svg += "<text x=\"" + fmt(margin_left + plot_w / 2) + "\" y=\"" +
           fmt(height - 8) + "\" font-family=\"sans-serif\" font-size=\"13\" "
           "text-anchor=\"middle\">" + map.x_label + "</text>\n";
    svg += "<text x=\"14\" y=\"" + fmt(margin_top + plot_h / 2) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 14 " + fmt(margin_top + plot_h / 2) + ")\">" +
           map.y_label + "</text>\n";
    svg += "<text x=\"" + fmt(margin_left + plot_w / 2) + "\" y=\"" +
           fmt(margin_top - 3) + "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">" + channel + " [" +
           (all_nan ? std::string("all NaN") : tick_label(lo) + ", " + tick_label(hi)) +
           "]</text>\n";
    svg += "</svg>\n";
    return svg;
}

void render_heatmap_svg(const TongueMap& map, const std::string& channel,
                        const std::string& path) {
    write_text_atomic(path, heatmap_svg(map, channel));
}

} // namespace lockin
