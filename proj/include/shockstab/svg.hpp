#pragma once

#include <string>
#include <vector>

namespace shockstab {

struct Series {
    std::string name;
    std::vector<double> x, y;
    bool markers = false;
};

struct Plot {
    std::string title, xlabel, ylabel;
    std::vector<Series> series;
    bool log_x = false, log_y = false;
    bool equal_aspect = false;
    int width = 640, height = 440;
};

// Standalone SVG document: axes with tick labels, one polyline per series and a legend.
std::string render_svg(const Plot& p);

}  // namespace shockstab
