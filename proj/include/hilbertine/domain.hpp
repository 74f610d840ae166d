#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "hilbertine/projective.hpp"

namespace hilbertine {

enum class Location { Interior, Boundary, Exterior };

// Properly convex open subset of RP^2, represented by its cone in R^3.
// Three shapes: a polygon from its vertices, the inside of a conic, and a finite
// intersection of half-planes. Polygons and half-plane intersections share the
// same polygonal core (cyclic vertices plus inward edge covectors).
class ConvexDomain {
public:
    enum class Kind { Polygon, Conic, Halfplanes };

    // Vertices are lifts into the cone, in cyclic order. Signs matter: they select
    // which of the polygons with these projective vertices is meant.
    static ConvexDomain polygon(const std::vector<Vec3>& lifted_vertices, double tol = 1e-12) {
        const std::size_t n = lifted_vertices.size();
        require(n >= 3, ErrorCode::DegenerateInput, "polygon needs at least 3 vertices");
        ConvexDomain d;
        d.kind_ = Kind::Polygon;
        for (const auto& v : lifted_vertices) {
            require(v.allFinite() && v.norm() > 0, ErrorCode::DegenerateInput, "bad polygon vertex");
            d.vertices_.push_back(v.normalized());
        }
        for (std::size_t i = 0; i < n; ++i) {
            Vec3 l = d.vertices_[i].cross(d.vertices_[(i + 1) % n]);
            require(l.norm() > tol, ErrorCode::DegenerateInput, "repeated polygon vertex");
            l.normalize();
            if (l.dot(d.vertices_[(i + 2) % n]) < 0) l = -l;
            d.lines_.push_back(l);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == (i + 1) % n) continue;
                require(d.lines_[i].dot(d.vertices_[j]) > tol, ErrorCode::NotProper,
                        "vertices do not bound a strictly convex polygon in the cone");
            }
        d.finish_polygonal();
        return d;
    }

    static ConvexDomain polygon(const std::vector<Vec2>& chart_points, const AffineChart& chart = {}) {
        std::vector<Vec3> lifted;
        for (const auto& p : chart_points) lifted.push_back(chart.lift(p));
        return polygon(lifted);
    }

    static ConvexDomain conic(const Conic& c) {
        ConvexDomain d;
        d.kind_ = Kind::Conic;
        d.conic_ = c;
        Eigen::SelfAdjointEigenSolver<Mat3> es(c.matrix());
        Vec3 u = es.eigenvectors().col(0);  // the unique negative direction
        int k = 0;
        u.cwiseAbs().maxCoeff(&k);
        if (u[k] < 0) u = -u;
        d.e_ = u;
        d.center_ = u;
        d.chart_ = AffineChart::from_covector(u);
        return d;
    }

    // Inward covectors (l(v) > 0 inside). Redundant constraints are pruned; the
    // input list is kept so that membership can be tested against every one.
    static ConvexDomain halfplanes(const std::vector<Vec3>& inward_lines, std::optional<Vec3> interior = {}) {
        require(inward_lines.size() >= 3, ErrorCode::DegenerateInput, "need at least 3 half-planes");
        ConvexDomain d;
        d.kind_ = Kind::Halfplanes;
        for (const auto& l : inward_lines) {
            require(l.allFinite() && l.norm() > 0, ErrorCode::DegenerateInput, "bad half-plane covector");
            d.input_lines_.push_back(l.normalized());
        }
        const Vec3 w = interior ? *interior : find_interior(d.input_lines_);
        double sgn = 0.0;
        for (const auto& l : d.input_lines_) {
            const double s = l.dot(w);
            if (sgn == 0.0) sgn = s > 0 ? 1.0 : -1.0;
            require(s * sgn > 0, ErrorCode::NotProper, "interior point violates a half-plane");
        }
        const Vec3 wl = sgn * w.normalized();

        // Extreme rays of the dual cone, seen in the chart {f : f(w) = 1}.
        auto [c1, c2] = orthonormal_complement(wl);
        std::vector<Vec2> pts;
        for (const auto& l : d.input_lines_) {
            const Vec3 f = l / l.dot(wl);
            pts.emplace_back(f.dot(c1), f.dot(c2));
        }
        const std::vector<Vec2> hull = convex_hull(pts);
        require(hull.size() >= 3, ErrorCode::NotProper, "half-planes do not cut out a properly convex domain");
        for (const auto& h : hull) {
            const Vec3 f = wl + h.x() * c1 + h.y() * c2;
            d.lines_.push_back(f.normalized());
        }
        const std::size_t n = d.lines_.size();
        for (std::size_t i = 0; i < n; ++i) {
            Vec3 v = d.lines_[(i + n - 1) % n].cross(d.lines_[i]).normalized();
            if (v.dot(wl) < 0) v = -v;
            d.vertices_.push_back(v);
        }
        d.finish_polygonal();
        return d;
    }

    Kind kind() const { return kind_; }
    bool is_polygonal() const { return kind_ != Kind::Conic; }

    const std::vector<Vec3>& vertices() const { return vertices_; }
    // lines()[i] is the inward covector of the edge from vertices()[i] to vertices()[i+1].
    const std::vector<Vec3>& lines() const { return lines_; }
    const std::vector<Vec3>& input_lines() const { return kind_ == Kind::Halfplanes ? input_lines_ : lines_; }
    const Conic& conic() const {
        require(kind_ == Kind::Conic, ErrorCode::DegenerateInput, "domain is not a conic");
        return *conic_;
    }

    // Covector positive on the closed cone, and the chart it defines.
    const Vec3& covector() const { return e_; }
    const AffineChart& chart() const { return chart_; }
    Vec3 center() const { return center_; }

    Vec3 lift(const Vec3& v) const { return e_.dot(v) < 0 ? Vec3(-v) : v; }

    ConvexDomain transformed(const Mat3& g) const {
        const Mat3 git = g.inverse().transpose();
        switch (kind_) {
        case Kind::Polygon: {
            std::vector<Vec3> vs;
            for (const auto& v : vertices_) vs.push_back(g * v);
            return polygon(vs);
        }
        case Kind::Conic: return conic(Conic(git * conic_->matrix() * git.transpose()));
        case Kind::Halfplanes: {
            std::vector<Vec3> ls;
            for (const auto& l : input_lines_) ls.push_back(git * l);
            return halfplanes(ls, Vec3(g * center_));
        }
        }
        return *this;
    }

private:
    ConvexDomain() : conic_(std::nullopt) {}

    void finish_polygonal() {
        e_ = Vec3::Zero();
        for (const auto& l : lines_) e_ += l;
        e_.normalize();
        center_ = Vec3::Zero();
        for (const auto& v : vertices_) center_ += v / e_.dot(v);
        center_ /= static_cast<double>(vertices_.size());
        chart_ = AffineChart::from_covector(e_);
    }

    // Perceptron iteration; terminates whenever the open cone is nonempty.
    static Vec3 find_interior(const std::vector<Vec3>& lines) {
        Vec3 w = Vec3::Zero();
        for (int pass = 0; pass < 20000; ++pass) {
            bool clean = true;
            for (const auto& l : lines) {
                if (l.dot(w) <= 1e-12 * w.norm()) {
                    w += l;
                    clean = false;
                }
            }
            if (clean && w.norm() > 0) return w;
        }
        fail(ErrorCode::NotProper, "half-planes have empty intersection");
    }

    Kind kind_ = Kind::Polygon;
    std::vector<Vec3> vertices_, lines_, input_lines_;
    std::optional<Conic> conic_;
    Vec3 e_ = Vec3(0, 0, 1);
    Vec3 center_ = Vec3(0, 0, 1);
    AffineChart chart_;
};

// ---------------------------------------------------------------------------
// Membership

inline Location locate(const ConvexDomain& dom, const Vec3& x, double tol = 1e-12) {
    require(x.allFinite() && x.norm() > 0, ErrorCode::DegenerateInput, "zero point");
    const Vec3 u = x.normalized();
    if (dom.kind() == ConvexDomain::Kind::Conic) {
        const double q = dom.conic()(u);
        if (q < -tol) return Location::Interior;
        return q <= tol ? Location::Boundary : Location::Exterior;
    }
    const double s = dom.covector().dot(u);
    if (std::abs(s) <= tol) return Location::Exterior;
    const Vec3 v = s > 0 ? u : Vec3(-u);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& l : dom.input_lines()) lo = std::min(lo, l.dot(v));
    if (lo > tol) return Location::Interior;
    return lo >= -tol ? Location::Boundary : Location::Exterior;
}

inline Location locate(const ConvexDomain& dom, const ProjPoint& p, double tol = 1e-12) {
    return locate(dom, p.coords(), tol);
}

inline bool contains(const ConvexDomain& dom, const ProjPoint& p, double tol = 1e-12) {
    return locate(dom, p, tol) == Location::Interior;
}

// ---------------------------------------------------------------------------
// Chords and the Hilbert metric

namespace detail {

// For x with e(x) = 1 inside and d with e(d) = 0, the closed chord is
// {x + t d : t in [t_minus, t_plus]} with t_minus < 0 < t_plus.
inline std::pair<double, double> chord_params(const ConvexDomain& dom, const Vec3& x, const Vec3& d) {
    if (dom.kind() == ConvexDomain::Kind::Conic) {
        const Conic& c = dom.conic();
        const double a = c(d), b = c.polar(x, d), q0 = c(x);
        const double disc = std::sqrt(std::max(b * b - a * q0, 0.0));
        // Roots of a t^2 + 2 b t + q0 = 0 with q0 < 0 < a, in stable form.
        const double big = b >= 0 ? -b - disc : -b + disc;
        const double r1 = big / a, r2 = q0 / big;
        return {std::min(r1, r2), std::max(r1, r2)};
    }
    double tp = std::numeric_limits<double>::infinity(), tm = -tp;
    for (const auto& l : dom.input_lines()) {
        const double ld = l.dot(d), lx = l.dot(x);
        if (ld < 0) tp = std::min(tp, -lx / ld);
        else if (ld > 0) tm = std::max(tm, -lx / ld);
    }
    return {tm, tp};
}

inline Vec3 normalized_lift(const ConvexDomain& dom, const Vec3& x) {
    const Vec3 v = dom.lift(x);
    return v / dom.covector().dot(v);
}

}  // namespace detail

struct Chord {
    ProjPoint p_minus;  // endpoint beyond x
    ProjPoint p_plus;   // endpoint beyond y
};

inline Chord boundary_chords(const ConvexDomain& dom, const ProjPoint& x, const ProjPoint& y, double tol = 1e-12) {
    require(locate(dom, x, tol) == Location::Interior && locate(dom, y, tol) == Location::Interior,
            ErrorCode::NotInterior, "chord endpoints must be interior");
    require(!x.approx_equal(y, 1e-15), ErrorCode::CoincidentPoints, "chord through coincident points");
    const Vec3 xv = detail::normalized_lift(dom, x.coords());
    const Vec3 d = detail::normalized_lift(dom, y.coords()) - xv;
    auto [tm, tp] = detail::chord_params(dom, xv, d);
    return {ProjPoint(xv + tm * d), ProjPoint(xv + tp * d)};
}

// d(x, y) = ln [p : x : y : q], without the factor 1/2.
inline Extended hilbert_distance(const ConvexDomain& dom, const ProjPoint& x, const ProjPoint& y,
                                 double tol = 1e-12) {
    const Location lx = locate(dom, x, tol), ly = locate(dom, y, tol);
    require(lx != Location::Exterior && ly != Location::Exterior, ErrorCode::NotInterior,
            "distance between points outside the domain");
    if (x.approx_equal(y, 1e-15)) return Extended(0.0);
    if (lx == Location::Boundary || ly == Location::Boundary) return Extended::infinite();
    // Canonical order makes d(x, y) and d(y, x) bitwise equal.
    const auto& cx = x.coords();
    const auto& cy = y.coords();
    const bool swap = std::lexicographical_compare(cy.data(), cy.data() + 3, cx.data(), cx.data() + 3);
    const Vec3 xv = detail::normalized_lift(dom, swap ? cy : cx);
    const Vec3 d = detail::normalized_lift(dom, swap ? cx : cy) - xv;
    auto [tm, tp] = detail::chord_params(dom, xv, d);
    const double gap_y = tp - 1.0, gap_x = -tm;
    if (!(gap_y > tol) || !(gap_x > tol)) return Extended::infinite();
    return Extended(std::log1p(1.0 / gap_y) + std::log1p(1.0 / gap_x));
}

// ---------------------------------------------------------------------------
// Finsler structure

namespace detail {

inline Vec3 signed_lift(const ConvexDomain& dom, const Vec3& x, Vec3& d) {
    if (dom.covector().dot(x) < 0) {
        d = -d;
        return -x;
    }
    return x;
}

}  // namespace detail

// Norm of the tangent vector d at the lifted point x (both in R^3); invariant
// under rescaling x and linear in d.
inline double finsler_norm_lifted(const ConvexDomain& dom, const Vec3& x_in, const Vec3& d_in) {
    Vec3 d = d_in;
    const Vec3 x = detail::signed_lift(dom, x_in, d);
    if (dom.kind() == ConvexDomain::Kind::Conic) {
        const Conic& c = dom.conic();
        const double q = c(x), b = c.polar(x, d);
        return 2.0 * std::sqrt(std::max(b * b - q * c(d), 0.0)) / std::abs(q);
    }
    double hi = -std::numeric_limits<double>::infinity(), lo = -hi;
    for (const auto& l : dom.lines()) {
        const double a = l.dot(d) / l.dot(x);
        hi = std::max(hi, a);
        lo = std::min(lo, a);
    }
    return hi - lo;
}

inline double finsler_norm(const ConvexDomain& dom, const Vec2& x, const Vec2& v, const AffineChart& chart = {}) {
    const Vec3 xl = chart.lift(x);
    require(locate(dom, xl) == Location::Interior, ErrorCode::NotInterior, "Finsler norm outside the domain");
    return finsler_norm_lifted(dom, xl, chart.tangent(v));
}

// Exact Lebesgue area, in chart coordinates, of the unit ball of the Finsler norm.
inline double unit_ball_area(const ConvexDomain& dom, const Vec2& x, const AffineChart& chart = {}) {
    Vec3 scratch = Vec3::Zero();
    const Vec3 xl = detail::signed_lift(dom, chart.lift(x), scratch);
    const Vec3 b1 = chart.b1(), b2 = chart.b2();
    if (dom.kind() == ConvexDomain::Kind::Conic) {
        const Conic& c = dom.conic();
        const double q = c(xl);
        const Vec2 beta(c.polar(xl, b1), c.polar(xl, b2));
        Mat2 g;
        g << c(b1), c.polar(b1, b2), c.polar(b1, b2), c(b2);
        const Mat2 m = 4.0 * (beta * beta.transpose() - q * g) / (q * q);
        return kPi / std::sqrt(m.determinant());
    }
    // The norm is the width function of K = conv{a_i}; its ball is the polar of K - K.
    std::vector<Vec2> a, neg;
    a.reserve(dom.lines().size());
    for (const auto& l : dom.lines()) {
        const double s = l.dot(xl);
        a.emplace_back(l.dot(b1) / s, l.dot(b2) / s);
    }
    const std::vector<Vec2> k = convex_hull(a);
    for (const auto& p : k) neg.push_back(-p);
    return polar_area(minkowski_sum(k, neg));
}

// Boundary of the unit ball at x, sampled at n equally spaced directions.
inline std::vector<Vec2> tangent_unit_ball(const ConvexDomain& dom, const Vec2& x, int n = 360,
                                           const AffineChart& chart = {}) {
    const Vec3 xl = chart.lift(x);
    require(locate(dom, xl) == Location::Interior, ErrorCode::NotInterior, "unit ball outside the domain");
    std::vector<Vec2> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * kPi * k / n;
        const Vec2 u(std::cos(th), std::sin(th));
        out.push_back(u / finsler_norm_lifted(dom, xl, chart.tangent(u)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Duality, sampling, comparison

inline ConvexDomain dual_domain(const ConvexDomain& dom) {
    if (dom.kind() == ConvexDomain::Kind::Conic) return ConvexDomain::conic(Conic(dom.conic().matrix().inverse()));
    return ConvexDomain::polygon(dom.lines());
}

// n lifted points on the boundary in cyclic order (polygon vertices included).
inline std::vector<Vec3> boundary_samples(const ConvexDomain& dom, int n) {
    std::vector<Vec3> out;
    if (dom.kind() == ConvexDomain::Kind::Conic) {
        Eigen::SelfAdjointEigenSolver<Mat3> es(dom.conic().matrix());
        const Vec3 ev = es.eigenvalues();
        Vec3 u3 = es.eigenvectors().col(0);
        if (dom.covector().dot(u3) < 0) u3 = -u3;
        const Vec3 u1 = es.eigenvectors().col(1) / std::sqrt(ev[1]);
        const Vec3 u2 = es.eigenvectors().col(2) / std::sqrt(ev[2]);
        const Vec3 c = u3 / std::sqrt(-ev[0]);
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * kPi * k / n;
            out.push_back(c + std::cos(th) * u1 + std::sin(th) * u2);
        }
        return out;
    }
    const auto& vs = dom.vertices();
    const std::size_t m = vs.size();
    std::vector<Vec3> w;
    double perimeter = 0.0;
    for (const auto& v : vs) w.push_back(v / dom.covector().dot(v));
    for (std::size_t i = 0; i < m; ++i) perimeter += (w[(i + 1) % m] - w[i]).norm();
    const int budget = std::max<int>(n - static_cast<int>(m), 0);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec3 a = w[i], b = w[(i + 1) % m];
        const int k = static_cast<int>(std::floor(budget * (b - a).norm() / perimeter));
        for (int j = 0; j <= k; ++j) out.push_back(a + (b - a) * (static_cast<double>(j) / (k + 1)));
    }
    return out;
}

// Support function of the closure in a chart where it is bounded.
inline double support_function(const ConvexDomain& dom, const Vec2& u, const AffineChart& chart) {
    if (dom.kind() == ConvexDomain::Kind::Conic) {
        const Conic& c = dom.conic();
        const Vec3 o = chart.origin(), b1 = chart.b1(), b2 = chart.b2();
        Mat2 a;
        a << c(b1), c.polar(b1, b2), c.polar(b1, b2), c(b2);
        const Vec2 b(c.polar(o, b1), c.polar(o, b2));
        const double c0 = c(o);
        require(a.determinant() > 0 && a(0, 0) > 0, ErrorCode::DegenerateInput, "conic is not an ellipse in this chart");
        const Mat2 ai = a.inverse();
        const Vec2 center = -ai * b;
        const double r = b.dot(ai * b) - c0;
        return u.dot(center) + std::sqrt(std::max(r, 0.0) * u.dot(ai * u));
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : dom.vertices()) {
        require(chart.covector().dot(v) * chart.covector().dot(dom.vertices().front()) > 0, ErrorCode::DegenerateInput,
                "polygon is not bounded in this chart");
        best = std::max(best, u.dot(chart.project(v)));
    }
    return best;
}

// Hausdorff distance of the closures in a common bounding chart, as the sup of
// the support-function difference over n_dirs directions.
inline double hausdorff_distance(const ConvexDomain& a, const ConvexDomain& b, const AffineChart& chart = {},
                                 int n_dirs = 4096) {
    double worst = 0.0;
    for (int k = 0; k < n_dirs; ++k) {
        const double th = 2.0 * kPi * k / n_dirs;
        const Vec2 u(std::cos(th), std::sin(th));
        worst = std::max(worst, std::abs(support_function(a, u, chart) - support_function(b, u, chart)));
    }
    return worst;
}

struct RegularityReport {
    std::vector<std::pair<Vec2, Vec2>> segments;  // maximal straight runs
    std::vector<Vec2> corners;                    // points with a supporting-angle jump

    bool strictly_convex() const { return segments.empty(); }
    bool c1() const { return corners.empty(); }
};

// Straight runs: consecutive samples aligned within align_tol (sine of the turn).
// Corners: turning angle above corner_angle at one sample.
inline RegularityReport regularity_report(const std::vector<Vec2>& samples, double align_tol = 1e-9,
                                          double corner_angle = 0.05) {
    RegularityReport rep;
    const std::size_t n = samples.size();
    if (n < 3) return rep;
    std::vector<char> straight(n);
    std::vector<double> turn(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = samples[i] - samples[(i + n - 1) % n];
        const Vec2 b = samples[(i + 1) % n] - samples[i];
        const double s = cross2(a, b) / (a.norm() * b.norm());
        turn[i] = std::atan2(cross2(a, b), a.dot(b));
        straight[i] = std::abs(s) <= align_tol && a.dot(b) > 0;
        if (std::abs(turn[i]) > corner_angle) rep.corners.push_back(samples[i]);
    }
    if (std::all_of(straight.begin(), straight.end(), [](char c) { return c; })) return rep;
    std::size_t start = 0;
    while (straight[start]) ++start;  // begin just after a bent sample
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t i = (start + k) % n;
        if (!straight[i]) continue;
        std::size_t j = i;
        std::size_t len = 0;
        while (straight[j % n] && len < n) {
            ++j;
            ++len;
        }
        rep.segments.emplace_back(samples[(i + n - 1) % n], samples[j % n]);
        k += len;
    }
    return rep;
}

inline RegularityReport regularity_report(const ConvexDomain& dom, int n_samples, double align_tol = 1e-9,
                                          double corner_angle = 0.05) {
    std::vector<Vec2> pts;
    for (const auto& v : boundary_samples(dom, n_samples)) pts.push_back(dom.chart().project(v));
    return regularity_report(pts, align_tol, corner_angle);
}

// Whether g maps boundary samples back onto the boundary (within tol).
inline bool preserves_domain(const Mat3& g, const ConvexDomain& dom, int n_samples = 256, double tol = 1e-9) {
    const Mat3 m = unimodular(g);
    for (const auto& v : boundary_samples(dom, n_samples))
        if (locate(dom, Vec3(m * v), tol) != Location::Boundary) return false;
    return locate(dom, Vec3(m * dom.center()), tol) == Location::Interior;
}

}  // namespace hilbertine
