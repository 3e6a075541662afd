#include "shockstab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace shockstab {

namespace {
const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Axis {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    bool log = false;

    double map(double v) const { return log ? std::log10(v) : v; }
    void include(double v) {
        if (!std::isfinite(v) || (log && v <= 0)) return;
        lo = std::min(lo, map(v));
        hi = std::max(hi, map(v));
    }
    void finish() {
        if (!(lo <= hi)) lo = 0, hi = 1;
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
    double frac(double v) const { return (map(v) - lo) / (hi - lo); }
    double label(double t) const { return log ? std::pow(10.0, t) : t; }
};
}  // namespace

std::string render_svg(const Plot& p) {
    const double left = 70, right = 150, top = 36, bottom = 50;
    const double w = p.width - left - right, h = p.height - top - bottom;
    Axis ax, ay;
    ax.log = p.log_x;
    ay.log = p.log_y;
    for (const Series& s : p.series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            ax.include(s.x[i]);
            ay.include(s.y[i]);
        }
    ax.finish();
    ay.finish();
    if (p.equal_aspect) {
        double sx = (ax.hi - ax.lo) / w, sy = (ay.hi - ay.lo) / h, s = std::max(sx, sy);
        double cx = 0.5 * (ax.lo + ax.hi), cy = 0.5 * (ay.lo + ay.hi);
        ax.lo = cx - 0.5 * s * w, ax.hi = cx + 0.5 * s * w;
        ay.lo = cy - 0.5 * s * h, ay.hi = cy + 0.5 * s * h;
    }
    auto px = [&](double v) { return left + w * ax.frac(v); };
    auto py = [&](double v) { return top + h * (1.0 - ay.frac(v)); };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << p.width << "\" height=\"" << p.height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << left + w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">" << escape(p.title)
      << "</text>\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double tx = ax.lo + (ax.hi - ax.lo) * i / 4, ty = ay.lo + (ay.hi - ay.lo) * i / 4;
        double gx = left + w * i / 4, gy = top + h * (1 - i / 4.0);
        o << "<line x1=\"" << gx << "\" y1=\"" << top << "\" x2=\"" << gx << "\" y2=\"" << top + h
          << "\" stroke=\"#ddd\"/>\n";
        o << "<line x1=\"" << left << "\" y1=\"" << gy << "\" x2=\"" << left + w << "\" y2=\"" << gy
          << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << gx << "\" y=\"" << top + h + 16 << "\" text-anchor=\"middle\">" << fmt(ax.label(tx))
          << "</text>\n";
        o << "<text x=\"" << left - 6 << "\" y=\"" << gy + 4 << "\" text-anchor=\"end\">" << fmt(ay.label(ty))
          << "</text>\n";
    }
    o << "<text x=\"" << left + w / 2 << "\" y=\"" << p.height - 12 << "\" text-anchor=\"middle\">"
      << escape(p.xlabel) << "</text>\n";
    o << "<text x=\"16\" y=\"" << top + h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + h / 2 << ")\">" << escape(p.ylabel) << "</text>\n";

    for (std::size_t k = 0; k < p.series.size(); ++k) {
        const Series& s = p.series[k];
        const char* color = palette[k % (sizeof palette / sizeof *palette)];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.3\" points=\"";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if ((p.log_x && s.x[i] <= 0) || (p.log_y && s.y[i] <= 0)) continue;
            o << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        o << "\"/>\n";
        if (s.markers)
            for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
                if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
                    o << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"2\" fill=\"" << color
                      << "\"/>\n";
        double ly = top + 12 + 16.0 * static_cast<double>(k);
        o << "<line x1=\"" << left + w + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + w + 28 << "\" y2=\"" << ly
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << left + w + 32 << "\" y=\"" << ly + 4 << "\">" << escape(s.name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace shockstab
