#pragma once

#include <string>
#include <vector>

#include "hilbertine/domain.hpp"
#include "hilbertine/quadrature.hpp"

namespace hilbertine {

// Which Hilbert metric the Busemann measure is built from. Distances in this
// library always use ln(cross ratio); the classical metric (1/2) ln(cross ratio)
// has a unit ball twice as large, so its 2-dimensional measure is 4 times smaller.
enum class Convention { LogCrossRatio, HalfLogCrossRatio };

inline double convention_factor(Convention c) { return c == Convention::LogCrossRatio ? 1.0 : 0.25; }

// Density of the Busemann measure w.r.t. Lebesgue measure of the chart,
// normalized so that the Euclidean unit disk has measure 1: pi / Leb(B_x).
inline double busemann_density(const ConvexDomain& dom, const Vec2& x, const AffineChart& chart = {},
                               Convention conv = Convention::LogCrossRatio) {
    return convention_factor(conv) * kPi / unit_ball_area(dom, x, chart);
}

// Convex polygon in an affine chart.
struct Region {
    AffineChart chart;
    std::vector<Vec2> vertices;

    static Region polygon(std::vector<Vec2> pts, const AffineChart& chart = {}) {
        Region r{chart, convex_hull(std::move(pts))};
        return r;
    }
    static Region triangle(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const AffineChart& chart = {}) {
        return polygon({chart.project(a), chart.project(b), chart.project(c)}, chart);
    }
    double chart_area() const { return vertices.size() < 3 ? 0.0 : std::abs(signed_area(vertices)); }
};

struct VolumeOptions {
    double rel_tol = 1e-6;
    double abs_tol = 1e-14;
    std::size_t max_cells = 10'000'000;
    Convention convention = Convention::LogCrossRatio;
};

namespace detail {

inline double integrate_density(const ConvexDomain& dom, const AffineChart& chart, const std::vector<Triangle2>& tris,
                                const VolumeOptions& opt) {
    const double k = convention_factor(opt.convention) * kPi;
    auto dens = [&](const Vec2& p) { return k / unit_ball_area(dom, p, chart); };
    const QuadratureResult r = integrate_triangles(dens, tris, opt.rel_tol, opt.abs_tol, opt.max_cells);
    require(r.converged, ErrorCode::NonConvergent, "cell budget exhausted in volume quadrature");
    return r.value;
}

}  // namespace detail

// Busemann volume of a region whose closure lies inside the domain.
inline double region_volume(const ConvexDomain& dom, const Region& region, const VolumeOptions& opt = {}) {
    if (region.chart_area() == 0.0) return 0.0;
    for (const auto& v : region.vertices) {
        const Location loc = locate(dom, region.chart.lift(v));
        require(loc != Location::Exterior, ErrorCode::NotInterior, "region leaves the domain");
        require(loc != Location::Boundary, ErrorCode::NonIntegrable, "region touches the boundary");
    }
    return detail::integrate_density(dom, region.chart, fan(region.vertices), opt);
}

// ---------------------------------------------------------------------------
// Ideal triangles

struct IdealTriangleArea {
    double value = 0.0;
    double error_estimate = 0.0;
    std::vector<double> epsilons;  // truncation ratios used
    std::vector<double> partial;   // volume of the truncated triangle at each ratio
};

struct IdealTriangleOptions {
    VolumeOptions volume{1e-8, 1e-14, 10'000'000, Convention::LogCrossRatio};
    double first_ratio = 0.25;
    double ratio_step = 0.25;
    int levels = 7;
    double agreement = 1e-2;  // relative gap allowed between the last two extrapolations
};

// The truncated triangle at ratio eps removes, at each vertex s, the homothetic
// copy s + eps (T - s). Volumes grow like V - c eps^p with p depending on the
// boundary regularity at the vertices; Aitken's delta-squared on three
// geometric levels eliminates the leading term without knowing p.
inline IdealTriangleArea ideal_triangle_area(const ConvexDomain& dom, const ProjPoint& s1, const ProjPoint& s2,
                                             const ProjPoint& s3, const IdealTriangleOptions& opt = {}) {
    const ProjPoint* s[3] = {&s1, &s2, &s3};
    for (const auto* p : s)
        require(locate(dom, *p, 1e-10) == Location::Boundary, ErrorCode::DegenerateInput,
                "ideal triangle vertices must lie on the boundary");
    const AffineChart& chart = dom.chart();
    std::vector<Vec2> p;
    for (const auto* q : s) p.push_back(chart.project(dom.lift(q->coords())));
    const double scale = std::max({(p[1] - p[0]).norm(), (p[2] - p[1]).norm(), (p[0] - p[2]).norm()});
    require(std::abs(cross2(p[1] - p[0], p[2] - p[0])) > 1e-10 * scale * scale, ErrorCode::DegenerateTriangle,
            "ideal triangle vertices are collinear or coincident");
    require(opt.levels >= 4, ErrorCode::DegenerateInput, "need at least 4 truncation levels");
    // An edge inside a boundary segment keeps every truncation in contact with the boundary.
    for (int i = 0; i < 3; ++i)
        require(locate(dom, chart.lift(0.5 * (p[i] + p[(i + 1) % 3])), 1e-10) != Location::Boundary,
                ErrorCode::NonConvergent, "ideal triangle edge lies in the boundary; the area is infinite");

    auto cut = [&](int i, double eps, int toward) { return Vec2(p[i] + eps * (p[toward] - p[i])); };
    IdealTriangleArea out;
    double eps = opt.first_ratio;
    std::vector<Vec2> hex;
    for (int i = 0; i < 3; ++i) {
        hex.push_back(cut(i, eps, (i + 2) % 3));
        hex.push_back(cut(i, eps, (i + 1) % 3));
    }
    double v = detail::integrate_density(dom, chart, fan(convex_hull(hex)), opt.volume);
    out.epsilons.push_back(eps);
    out.partial.push_back(v);
    for (int level = 1; level < opt.levels; ++level) {
        const double next = eps * opt.ratio_step;
        std::vector<Triangle2> strips;
        for (int i = 0; i < 3; ++i) {
            const auto quad = fan(convex_hull({cut(i, eps, (i + 1) % 3), cut(i, next, (i + 1) % 3),
                                               cut(i, next, (i + 2) % 3), cut(i, eps, (i + 2) % 3)}));
            strips.insert(strips.end(), quad.begin(), quad.end());
        }
        v += detail::integrate_density(dom, chart, strips, opt.volume);
        eps = next;
        out.epsilons.push_back(eps);
        out.partial.push_back(v);
    }

    auto aitken = [&](std::size_t k) {
        const double d1 = out.partial[k - 1] - out.partial[k - 2], d2 = out.partial[k] - out.partial[k - 1];
        const double rho = d2 / d1;
        require(rho < 0.9 && rho > -0.9, ErrorCode::NonConvergent, "truncated volumes do not contract");
        return out.partial[k] + d2 * rho / (1.0 - rho);
    };
    const std::size_t last = out.partial.size() - 1;
    const double a = aitken(last), b = aitken(last - 1);
    out.value = a;
    out.error_estimate = std::abs(a - b);
    require(out.error_estimate <= opt.agreement * std::abs(a), ErrorCode::NonConvergent,
            "extrapolated ideal triangle area is unstable");
    return out;
}

// ---------------------------------------------------------------------------
// Pics: triangles with exactly one vertex on the boundary

struct Pic {
    Region triangle;  // three vertices, one of them on the boundary
    int apex = 0;     // index of the boundary vertex
};

enum class Verdict { Converged, Diverging, Undecided };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Converged: return "Converged";
    case Verdict::Diverging: return "Diverging";
    case Verdict::Undecided: return "Undecided";
    }
    return "Undecided";
}

struct VolumeProfile {
    std::vector<double> epsilons;
    std::vector<double> partial;
    Verdict verdict = Verdict::Undecided;

    std::vector<double> increments() const {
        std::vector<double> d;
        for (std::size_t i = 1; i < partial.size(); ++i) d.push_back(partial[i] - partial[i - 1]);
        return d;
    }
};

inline std::vector<double> decade_schedule(int k_max = 8) {
    std::vector<double> s;
    for (int k = 1; k <= k_max; ++k) s.push_back(std::pow(10.0, -k));
    return s;
}

// Diverging: each of the last three increments is at least half the previous one.
// Converged: the increments among the last three levels are below tol.
inline Verdict classify_profile(const VolumeProfile& prof, double tol) {
    const auto d = prof.increments();
    const std::size_t n = d.size();
    if (n >= 4) {
        bool grows = true;
        for (std::size_t i = n - 3; i < n; ++i) grows = grows && d[i] > 0 && d[i] >= 0.5 * d[i - 1];
        if (grows && d[n - 1] >= tol) return Verdict::Diverging;
    }
    if (n >= 2 && std::abs(d[n - 1]) < tol && std::abs(d[n - 2]) < tol) return Verdict::Converged;
    return Verdict::Undecided;
}

inline Region truncate_pic(const Pic& pic, double eps) {
    const auto& v = pic.triangle.vertices;
    const int a = pic.apex, b = (a + 1) % 3, c = (a + 2) % 3;
    return Region{pic.triangle.chart, {Vec2(v[a] + eps * (v[b] - v[a])), v[b], v[c], Vec2(v[a] + eps * (v[c] - v[a]))}};
}

// Partial volumes mu_k of the pic with the corner of ratio eps_k at the apex
// removed, accumulated strip by strip so that increments are resolved directly.
inline VolumeProfile pic_volume_profile(const ConvexDomain& dom, const Pic& pic,
                                        const std::vector<double>& schedule = decade_schedule(),
                                        const VolumeOptions& opt = {}, double tol = 1e-3) {
    const auto& v = pic.triangle.vertices;
    require(v.size() == 3 && pic.apex >= 0 && pic.apex < 3, ErrorCode::BadPic, "a pic is a triangle with an apex");
    for (int i = 0; i < 3; ++i) {
        const Location loc = locate(dom, pic.triangle.chart.lift(v[i]), 1e-10);
        require(i == pic.apex ? loc == Location::Boundary : loc == Location::Interior, ErrorCode::BadPic,
                "pic must have exactly its apex on the boundary");
    }
    require(!schedule.empty(), ErrorCode::DegenerateInput, "empty truncation schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i)
        require(schedule[i] > 0 && schedule[i] < 1 && (i == 0 || schedule[i] < schedule[i - 1]),
                ErrorCode::DegenerateInput, "schedule must decrease inside (0, 1)");

    const AffineChart& chart = pic.triangle.chart;
    const int a = pic.apex, b = (a + 1) % 3, c = (a + 2) % 3;
    auto at = [&](double e, int to) { return Vec2(v[a] + e * (v[to] - v[a])); };
    VolumeProfile prof;
    double mu = detail::integrate_density(dom, chart, fan(truncate_pic(pic, schedule[0]).vertices), opt);
    prof.epsilons.push_back(schedule[0]);
    prof.partial.push_back(mu);
    for (std::size_t k = 1; k < schedule.size(); ++k) {
        const double e0 = schedule[k - 1], e1 = schedule[k];
        mu += detail::integrate_density(dom, chart, fan({at(e0, b), at(e1, b), at(e1, c), at(e0, c)}), opt);
        prof.epsilons.push_back(e1);
        prof.partial.push_back(mu);
    }
    prof.verdict = classify_profile(prof, tol);
    return prof;
}

}  // namespace hilbertine
