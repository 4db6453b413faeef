#include "flatspot/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace flatspot::svg {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 420;
constexpr int kMargin = 50;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Frame {
    double x_lo, x_hi, y_hi;

    double px(double x) const {
        return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin);
    }
    double py(double y) const {
        return kHeight - kMargin - y / y_hi * (kHeight - 2 * kMargin);
    }
};

void header(std::ostream& os) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
}

void axes(std::ostream& os, const Frame& f) {
    os << "<line x1=\"" << fmt(f.px(f.x_lo)) << "\" y1=\"" << fmt(f.py(0)) << "\" x2=\""
       << fmt(f.px(f.x_hi)) << "\" y2=\"" << fmt(f.py(0))
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt(f.px(0)) << "\" y1=\"" << fmt(f.py(0)) << "\" x2=\""
       << fmt(f.px(0)) << "\" y2=\"" << fmt(f.py(f.y_hi))
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (double x = -0.5; x <= 0.5001; x += 0.25) {
        os << "<line x1=\"" << fmt(f.px(x)) << "\" y1=\"" << fmt(f.py(0)) << "\" x2=\""
           << fmt(f.px(x)) << "\" y2=\"" << fmt(f.py(0) + 5)
           << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(f.px(x)) << "\" y=\"" << fmt(f.py(0) + 18)
           << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x)
           << "</text>\n";
    }
    os << "<text x=\"" << fmt(f.px(0) - 8) << "\" y=\"" << fmt(f.py(f.y_hi) + 4)
       << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" << fmt(f.y_hi)
       << "</text>\n";
}

void polyline(std::ostream& os, const std::vector<std::pair<double, double>>& pts,
              const Frame& f) {
    os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        os << fmt(f.px(pts[i].first)) << ',' << fmt(f.py(pts[i].second));
    }
    os << "\"/>\n";
}

}  // namespace

void write_step_plot(const density::StepFunction& f, std::ostream& os) {
    std::vector<std::pair<double, double>> pts;
    double y_hi = 1.0;
    const auto& b = f.breakpoints();
    const auto& v = f.values();
    if (!v.empty()) {
        pts.emplace_back(b.front().to_double(), 0.0);
        for (size_t i = 0; i < v.size(); ++i) {
            const double y = v[i].to_double();
            y_hi = std::max(y_hi, y);
            pts.emplace_back(b[i].to_double(), y);
            pts.emplace_back(b[i + 1].to_double(), y);
        }
        pts.emplace_back(b.back().to_double(), 0.0);
    }
    const Frame frame{-0.55, 0.55, y_hi * 1.05};
    header(os);
    axes(os, frame);
    polyline(os, pts, frame);
    os << "</svg>\n";
}

void write_histogram_plot(const montecarlo::Histogram& h, std::ostream& os) {
    std::vector<std::pair<double, double>> pts;
    double y_hi = 1.0;
    const double m = static_cast<double>(h.total);
    const double width = 1.0 / h.bins;
    pts.emplace_back(-0.5, 0.0);
    for (int i = 0; i < h.bins; ++i) {
        const double y = static_cast<double>(h.counts[static_cast<size_t>(i)]) / (m * width);
        y_hi = std::max(y_hi, y);
        pts.emplace_back(-0.5 + i * width, y);
        pts.emplace_back(-0.5 + (i + 1) * width, y);
    }
    pts.emplace_back(0.5, 0.0);
    const Frame frame{-0.55, 0.55, y_hi * 1.05};
    header(os);
    axes(os, frame);
    polyline(os, pts, frame);
    os << "</svg>\n";
}

}  // namespace flatspot::svg
