#include "rpng/svg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

namespace rpng {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 560.0;
constexpr double kMargin = 50.0;

struct Scale {
    double x0, x1, y0, y1; // data ranges
    double sx(double x) const {
        return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin);
    }
    double sy(double y) const {
        // y grows upward in the plots.
        return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
    }
};

void svg_open(std::ostream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_close(std::ostream& out) { out << "</svg>\n"; }

void axes(std::ostream& out, const Scale& sc, const std::string& xlab,
          const std::string& ylab) {
    out << "<line x1=\"" << sc.sx(sc.x0) << "\" y1=\"" << sc.sy(sc.y0) << "\" x2=\""
        << sc.sx(sc.x1) << "\" y2=\"" << sc.sy(sc.y0)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << sc.sx(sc.x0) << "\" y1=\"" << sc.sy(sc.y0) << "\" x2=\""
        << sc.sx(sc.x0) << "\" y2=\"" << sc.sy(sc.y1)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" font-size=\"14\" text-anchor=\"middle\">" << xlab << "</text>\n";
    out << "<text x=\"14\" y=\"" << kHeight / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << kHeight / 2 << ")\">" << ylab << "</text>\n";
    // A few ticks per axis.
    for (int i = 0; i <= 4; ++i) {
        const double x = sc.x0 + (sc.x1 - sc.x0) * i / 4.0;
        const double y = sc.y0 + (sc.y1 - sc.y0) * i / 4.0;
        out << "<text x=\"" << sc.sx(x) << "\" y=\"" << sc.sy(sc.y0) + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << x << "</text>\n";
        out << "<text x=\"" << sc.sx(sc.x0) - 8 << "\" y=\"" << sc.sy(y) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << y << "</text>\n";
    }
}

void polyline(std::ostream& out, std::span<const std::pair<double, double>> pts,
              const std::string& color, double width, bool closed = false) {
    if (pts.empty()) return;
    out << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"" << width << "\" points=\"";
    for (const auto& [x, y] : pts) out << x << ',' << y << ' ';
    out << "\"/>\n";
}

} // namespace

void render_profile_svg(std::ostream& out, std::span<const HeightProfile> profiles,
                        std::int32_t view_half_width) {
    if (profiles.empty()) {
        svg_open(out);
        svg_close(out);
        return;
    }
    std::int32_t view = view_half_width;
    if (view <= 0) view = profiles.front().half_width;
    view = std::min(view, profiles.front().half_width);

    std::int32_t hmax = 1;
    for (const auto& p : profiles)
        for (std::int32_t e = -view; e < view; ++e) hmax = std::max(hmax, p.at(e));

    Scale sc{static_cast<double>(-view), static_cast<double>(view), 0.0,
             static_cast<double>(hmax) * 1.05 + 1.0};
    svg_open(out);
    axes(out, sc, "edge", "height");

    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto& p = profiles[i];
        std::vector<std::pair<double, double>> pts;
        pts.reserve(static_cast<std::size_t>(2 * view) * 2);
        for (std::int32_t e = -view; e < view; ++e) {
            const double h = p.at(e);
            pts.emplace_back(sc.sx(e), sc.sy(h));
            pts.emplace_back(sc.sx(e + 1), sc.sy(h));
        }
        polyline(out, pts, colors[i % 5], 1.5);
        out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin + 16.0 * i
            << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << colors[i % 5]
            << "\">t = " << p.time << "</text>\n";
    }
    svg_close(out);
}

void render_phase_svg(std::ostream& out, const PhaseScan& scan) {
    if (scan.points.empty()) {
        svg_open(out);
        svg_close(out);
        return;
    }
    double x0 = scan.points.front().lambda0, x1 = scan.points.back().lambda0;
    const double pad = std::max(0.25, (x1 - x0) * 0.08);
    x0 -= pad;
    x1 += pad;
    if (x0 > 0.0) x0 = 0.0;
    double ymax = scan.lambda + 0.5;
    for (const auto& p : scan.points) ymax = std::max(ymax, p.origin.v_hat);
    const double expected_top = scan.lambda + std::max(x1 - 1.0, 0.0);
    ymax = std::max(ymax, expected_top) * 1.1 + 0.05;

    Scale sc{x0, x1, 0.0, ymax};
    svg_open(out);
    axes(out, sc, "lambda0", "growth speed at e0");

    // Expected kinked line lambda + max(lambda0 - 1, 0).
    std::vector<std::pair<double, double>> line;
    for (double x : {x0, std::min(std::max(1.0, x0), x1), x1})
        line.emplace_back(sc.sx(x), sc.sy(scan.lambda + std::max(x - 1.0, 0.0)));
    polyline(out, line, "#888888", 1.5);
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#888888\">"
        << "lambda + max(lambda0 - 1, 0)</text>\n";

    for (const auto& p : scan.points) {
        const double cx = sc.sx(p.lambda0);
        const double cy = sc.sy(p.origin.v_hat);
        const double e = 3.0 * p.origin.stderr_;
        out << "<line x1=\"" << cx << "\" y1=\"" << sc.sy(p.origin.v_hat - e) << "\" x2=\""
            << cx << "\" y2=\"" << sc.sy(p.origin.v_hat + e)
            << "\" stroke=\"#1f77b4\" stroke-width=\"1\"/>\n";
        out << "<circle cx=\"" << cx << "\" cy=\"" << cy
            << "\" r=\"3.5\" fill=\"#1f77b4\"/>\n";
        const double ry = sc.sy(p.ref.v_hat);
        out << "<circle cx=\"" << cx << "\" cy=\"" << ry
            << "\" r=\"3\" fill=\"none\" stroke=\"#d62728\"/>\n";
    }
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin + 16
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#1f77b4\">at e0</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin + 32
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#d62728\">at reference edge</text>\n";
    svg_close(out);
}

void render_level_lines_svg(std::ostream& out, const LevelLineSet& set,
                            std::int32_t view_half_width) {
    std::int32_t view = view_half_width;
    if (view <= 0) {
        view = 8;
        for (const auto& c : set.curves)
            for (const auto& [t, s] : c.vertices)
                view = std::max(view, std::abs(s) + 2);
    }
    Scale sc{static_cast<double>(-view), static_cast<double>(view), 0.0,
             set.horizon * 1.02};
    svg_open(out);
    axes(out, sc, "site", "time");

    for (const auto& c : set.curves) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(c.vertices.size());
        for (const auto& [t, s] : c.vertices) pts.emplace_back(sc.sx(s), sc.sy(t));
        const bool bold = c.candidate_unbounded;
        const double w = bold ? 2.6 : (c.closed ? 0.8 : 1.4);
        const char* color = bold ? "#000000" : (c.closed ? "#777777" : "#1f77b4");
        polyline(out, pts, color, w, c.closed);
    }
    svg_close(out);
}

} // namespace rpng
