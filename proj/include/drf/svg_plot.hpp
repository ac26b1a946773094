// svg_plot.hpp — Self-contained SVG emission: temperature-sweep overlays per
// damping model and a two-panel model comparison. Single-drive curves render
// dashed, double-drive solid.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "drf/dressed_spectrum.hpp"

namespace drf::plot {

struct Curve {
    const dressed::Spectrum* spectrum = nullptr;
    std::string label;
    std::string color;  // css color
    bool dashed = false;
};

// One panel, all curves on a shared common scale (first curve's raw peak).
void write_overlay_svg(const std::filesystem::path& path, const std::string& title,
                       const std::vector<Curve>& curves);

// Stacked panels, one per entry; used for side-by-side model comparisons.
struct Panel {
    std::string title;
    std::vector<Curve> curves;
};
void write_panels_svg(const std::filesystem::path& path, const std::vector<Panel>& panels);

} // namespace drf::plot
