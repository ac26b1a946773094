#include "drf/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "drf/spectrum_io.hpp"

namespace drf::plot {

namespace {

constexpr double kPanelW = 640.0, kPanelH = 360.0;
constexpr double kMarginL = 64.0, kMarginR = 16.0, kMarginT = 36.0, kMarginB = 48.0;

struct Extent {
    double xmin = 0.0, xmax = 1.0, ymax = 1.0;
};

Extent curve_extent(const std::vector<Curve>& curves) {
    Extent e;
    bool first = true;
    for (const auto& c : curves) {
        if (!c.spectrum || c.spectrum->detunings.empty()) continue;
        const auto& d = c.spectrum->detunings;
        const double lo = d.front(), hi = d.back();
        // Common scale: every curve re-expressed in raw units relative to the
        // largest raw peak so intensity changes with temperature stay visible.
        if (first) {
            e.xmin = lo;
            e.xmax = hi;
            first = false;
        } else {
            e.xmin = std::min(e.xmin, lo);
            e.xmax = std::max(e.xmax, hi);
        }
    }
    return e;
}

double common_scale(const std::vector<Curve>& curves) {
    double peak = 0.0;
    for (const auto& c : curves)
        if (c.spectrum) peak = std::max(peak, c.spectrum->metadata.raw_peak);
    return peak > 0.0 ? peak : 1.0;
}

// Raw intensity of sample i (undo per-spectrum normalization if present).
double raw_value(const dressed::Spectrum& s, std::size_t i) {
    return s.metadata.normalized ? s.values[i] * s.metadata.raw_peak : s.values[i];
}

void render_panel(std::ostream& os, double ox, double oy, const std::string& title,
                  const std::vector<Curve>& curves) {
    const Extent e = curve_extent(curves);
    const double scale = common_scale(curves);
    const double plotW = kPanelW - kMarginL - kMarginR;
    const double plotH = kPanelH - kMarginT - kMarginB;
    auto sx = [&](double x) {
        return ox + kMarginL + (x - e.xmin) / (e.xmax - e.xmin) * plotW;
    };
    auto sy = [&](double y) { return oy + kMarginT + (1.0 - y / 1.05) * plotH; };

    os << "<rect x=\"" << ox + kMarginL << "\" y=\"" << oy + kMarginT << "\" width=\""
       << plotW << "\" height=\"" << plotH
       << "\" fill=\"white\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << ox + kPanelW / 2 << "\" y=\"" << oy + kMarginT - 12
       << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">"
       << title << "</text>\n";

    // x ticks
    const int nticks = 5;
    for (int t = 0; t <= nticks; ++t) {
        const double x = e.xmin + (e.xmax - e.xmin) * t / nticks;
        os << "<line x1=\"" << sx(x) << "\" y1=\"" << oy + kMarginT + plotH << "\" x2=\""
           << sx(x) << "\" y2=\"" << oy + kMarginT + plotH + 4
           << "\" stroke=\"#444\"/>\n";
        std::ostringstream lab;
        lab.precision(3);
        lab << x;
        os << "<text x=\"" << sx(x) << "\" y=\"" << oy + kMarginT + plotH + 18
           << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
           << lab.str() << "</text>\n";
    }
    os << "<text x=\"" << ox + kMarginL + plotW / 2 << "\" y=\"" << oy + kPanelH - 8
       << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
          "detuning (rad/ns)</text>\n";
    os << "<text x=\"" << ox + 16 << "\" y=\"" << oy + kMarginT + plotH / 2
       << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "transform=\"rotate(-90 "
       << ox + 16 << " " << oy + kMarginT + plotH / 2 << ")\">intensity</text>\n";

    // y ticks at 0, 0.5, 1 of the common scale
    for (double frac : {0.0, 0.5, 1.0}) {
        os << "<line x1=\"" << ox + kMarginL - 4 << "\" y1=\"" << sy(frac) << "\" x2=\""
           << ox + kMarginL << "\" y2=\"" << sy(frac) << "\" stroke=\"#444\"/>\n";
        std::ostringstream lab;
        lab.precision(2);
        lab << frac;
        os << "<text x=\"" << ox + kMarginL - 8 << "\" y=\"" << sy(frac) + 4
           << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">"
           << lab.str() << "</text>\n";
    }

    // curves
    for (const auto& c : curves) {
        if (!c.spectrum) continue;
        const auto& s = *c.spectrum;
        os << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.3\"";
        if (c.dashed) os << " stroke-dasharray=\"6 4\"";
        os << " points=\"";
        const std::size_t stride = std::max<std::size_t>(1, s.detunings.size() / 1200);
        for (std::size_t i = 0; i < s.detunings.size(); i += stride) {
            os << sx(s.detunings[i]) << "," << sy(raw_value(s, i) / scale) << " ";
        }
        os << "\"/>\n";
    }

    // legend
    double ly = oy + kMarginT + 10;
    for (const auto& c : curves) {
        const double lx = ox + kMarginL + plotW - 150;
        os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 26
           << "\" y2=\"" << ly << "\" stroke=\"" << c.color << "\" stroke-width=\"1.5\"";
        if (c.dashed) os << " stroke-dasharray=\"6 4\"";
        os << "/>\n";
        os << "<text x=\"" << lx + 32 << "\" y=\"" << ly + 4
           << "\" font-size=\"11\" font-family=\"sans-serif\">" << c.label
           << "</text>\n";
        ly += 15;
    }
}

} // namespace

void write_overlay_svg(const std::filesystem::path& path, const std::string& title,
                       const std::vector<Curve>& curves) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPanelW
       << "\" height=\"" << kPanelH << "\" viewBox=\"0 0 " << kPanelW << " " << kPanelH
       << "\">\n";
    render_panel(os, 0.0, 0.0, title, curves);
    os << "</svg>\n";
}

void write_panels_svg(const std::filesystem::path& path,
                      const std::vector<Panel>& panels) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    const double H = kPanelH * panels.size();
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPanelW
       << "\" height=\"" << H << "\" viewBox=\"0 0 " << kPanelW << " " << H << "\">\n";
    for (std::size_t i = 0; i < panels.size(); ++i)
        render_panel(os, 0.0, kPanelH * i, panels[i].title, panels[i].curves);
    os << "</svg>\n";
}

} // namespace drf::plot
