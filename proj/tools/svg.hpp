#pragma once

// Minimal SVG 1.1 writer: paths, circles and polylines in a 1000 x 1000 view box.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "hilbertine/hilbertine.hpp"

namespace hilbertine::cli {

enum class Layer { Domain, Region, Translate, Bisector, Annulus, Point, Axis };

struct Style {
    const char* stroke;
    const char* fill;
    double width;
};

inline Style style_of(Layer l) {
    switch (l) {
    case Layer::Domain: return {"#1f3b73", "#eef2fa", 3.0};
    case Layer::Region: return {"#b9770e", "#f9e79f", 1.5};
    case Layer::Translate: return {"#7f8c8d", "#e5e8e8", 1.0};
    case Layer::Bisector: return {"#c0392b", "none", 1.5};
    case Layer::Annulus: return {"#2e86c1", "#d6eaf8", 1.0};
    case Layer::Point: return {"none", "#8e44ad", 0.0};
    case Layer::Axis: return {"#196f3d", "none", 1.5};
    }
    return {"#000000", "none", 1.0};
}

class Svg {
public:
    // Fits the chart box [lo, hi] into the view box with a 5% margin, y up.
    Svg(const Vec2& lo, const Vec2& hi) {
        const double w = std::max(hi.x() - lo.x(), 1e-12), h = std::max(hi.y() - lo.y(), 1e-12);
        scale_ = 900.0 / std::max(w, h);
        off_ = Vec2(500.0 - scale_ * 0.5 * (lo.x() + hi.x()), 500.0 + scale_ * 0.5 * (lo.y() + hi.y()));
    }

    static Svg fitting(const std::vector<Vec2>& pts) {
        Vec2 lo(1e300, 1e300), hi(-1e300, -1e300);
        for (const auto& p : pts) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        if (pts.empty()) lo = hi = Vec2::Zero();
        return Svg(lo, hi);
    }

    // Polygons are clipped to the view box (Sutherland-Hodgman in pixel space).
    void polygon(const std::vector<Vec2>& pts, Layer l) {
        std::vector<Vec2> px;
        for (const auto& p : pts) px.push_back(map(p));
        for (int axis = 0; axis < 2; ++axis)
            for (double bound : {0.0, 1000.0}) px = clip_half(px, axis, bound);
        if (px.size() < 2) return;
        const Style s = style_of(l);
        std::string d;
        for (std::size_t i = 0; i < px.size(); ++i) d += (i ? " L " : "M ") + num(px[i].x()) + " " + num(px[i].y());
        body_ << "<path d=\"" << d << " Z\" stroke=\"" << s.stroke << "\" fill=\"" << s.fill << "\" stroke-width=\""
              << num(s.width) << "\"/>\n";
    }

    // Polylines are clipped segment by segment; a run leaving the box starts a new element.
    void polyline(const std::vector<Vec2>& pts, Layer l) {
        std::vector<Vec2> run;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            Vec2 a = map(pts[i]), b = map(pts[i + 1]);
            if (!clip_segment(a, b)) {
                emit_polyline(run, l);
                continue;
            }
            if (!run.empty() && (run.back() - a).norm() > 1e-9) emit_polyline(run, l);
            if (run.empty()) run.push_back(a);
            run.push_back(b);
        }
        emit_polyline(run, l);
    }

    void circle(const Vec2& c, double r_px, Layer l) {
        const Style s = style_of(l);
        const Vec2 p = map(c);
        if (p.x() < 0 || p.x() > 1000 || p.y() < 0 || p.y() > 1000) return;
        body_ << "<circle cx=\"" << num(p.x()) << "\" cy=\"" << num(p.y()) << "\" r=\"" << num(r_px) << "\" fill=\""
              << s.fill << "\"/>\n";
    }

    std::string str() const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
               "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" height=\"1000\" "
               "viewBox=\"0 0 1000 1000\">\n" +
               body_.str() + "</svg>\n";
    }

private:
    Vec2 map(const Vec2& p) const { return {off_.x() + scale_ * p.x(), off_.y() - scale_ * p.y()}; }

    void emit_polyline(std::vector<Vec2>& run, Layer l) {
        if (run.size() >= 2) {
            const Style s = style_of(l);
            std::string d;
            for (std::size_t i = 0; i < run.size(); ++i) d += (i ? " " : "") + num(run[i].x()) + "," + num(run[i].y());
            body_ << "<polyline points=\"" << d << "\" stroke=\"" << s.stroke << "\" fill=\"none\" stroke-width=\""
                  << num(s.width) << "\"/>\n";
        }
        run.clear();
    }

    // Keeps the part of a closed polygon with coordinate `axis` on the inner side of `bound`.
    static std::vector<Vec2> clip_half(const std::vector<Vec2>& in, int axis, double bound) {
        const double sgn = bound > 0 ? -1.0 : 1.0;
        auto inside = [&](const Vec2& p) { return sgn * (p[axis] - bound) >= 0; };
        std::vector<Vec2> out;
        for (std::size_t i = 0; i < in.size(); ++i) {
            const Vec2& a = in[i];
            const Vec2& b = in[(i + 1) % in.size()];
            if (inside(a)) out.push_back(a);
            if (inside(a) != inside(b)) out.push_back(a + (bound - a[axis]) / (b[axis] - a[axis]) * (b - a));
        }
        return out;
    }

    // Liang-Barsky against [0, 1000]^2; false when the segment misses the box.
    static bool clip_segment(Vec2& a, Vec2& b) {
        double t0 = 0.0, t1 = 1.0;
        const Vec2 d = b - a;
        const double p[4] = {-d.x(), d.x(), -d.y(), d.y()};
        const double q[4] = {a.x(), 1000.0 - a.x(), a.y(), 1000.0 - a.y()};
        for (int i = 0; i < 4; ++i) {
            if (p[i] == 0.0) {
                if (q[i] < 0) return false;
                continue;
            }
            const double r = q[i] / p[i];
            if (p[i] < 0) t0 = std::max(t0, r);
            else t1 = std::min(t1, r);
            if (t0 > t1) return false;
        }
        const Vec2 a0 = a;
        a = a0 + t0 * d;
        b = a0 + t1 * d;
        return true;
    }

    static std::string num(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", x);
        std::string s = buf;
        return s == "-0.000" ? "0.000" : s;
    }

    double scale_ = 1.0;
    Vec2 off_ = Vec2::Zero();
    std::ostringstream body_;
};

// Boundary of a domain as a closed chart polygon.
inline std::vector<Vec2> outline(const ConvexDomain& dom, const AffineChart& chart, int n = 720) {
    std::vector<Vec2> pts;
    if (dom.is_polygonal()) {
        for (const auto& v : dom.vertices()) pts.push_back(chart.project(v));
    } else {
        for (const auto& b : boundary_samples(dom, n)) pts.push_back(chart.project(b));
    }
    return pts;
}

// Chord of the line l inside the domain, as two chart points (empty if it misses).
inline std::vector<Vec2> line_chord(const ConvexDomain& dom, const Vec3& l, const AffineChart& chart) {
    const auto pts = outline(dom, chart, 2048);
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec3 a = chart.lift(pts[i]), b = chart.lift(pts[(i + 1) % pts.size()]);
        const double fa = l.dot(a), fb = l.dot(b);
        if ((fa < 0) == (fb < 0) || fa == fb) continue;
        const double t = fa / (fa - fb);
        out.push_back(chart.project(Vec3(a + t * (b - a))));
        if (out.size() == 2) break;
    }
    if (out.size() < 2) out.clear();
    return out;
}

}  // namespace hilbertine::cli
