#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hilbertine/linalg.hpp"

namespace hilbertine {

inline constexpr double kDefaultTol = 1e-12;

// A nonzero triple up to scale. Stored with unit Euclidean norm and the entry of
// largest magnitude positive, so equal classes have bitwise-equal coordinates.
template <class Tag>
class Homogeneous {
public:
    Homogeneous() : v_(0.0, 0.0, 1.0) {}
    explicit Homogeneous(const Vec3& v) : v_(canonical(v)) {}
    Homogeneous(double x, double y, double z) : Homogeneous(Vec3(x, y, z)) {}

    const Vec3& coords() const { return v_; }
    double operator[](int i) const { return v_[i]; }

    // Sine of the angle between representatives; zero iff the classes coincide.
    double separation(const Homogeneous& o) const { return v_.cross(o.v_).norm(); }
    bool approx_equal(const Homogeneous& o, double tol = 1e-9) const { return separation(o) <= tol; }

private:
    static Vec3 canonical(const Vec3& v) {
        const double n = v.norm();
        require(std::isfinite(n) && n > 0.0, ErrorCode::DegenerateInput, "zero homogeneous vector");
        Vec3 u = v / n;
        int k = 0;
        u.cwiseAbs().maxCoeff(&k);
        if (u[k] < 0) u = -u;
        return u;
    }
    Vec3 v_;
};

struct PointTag {};
struct LineTag {};
using ProjPoint = Homogeneous<PointTag>;
using ProjLine = Homogeneous<LineTag>;

inline double incidence(const ProjPoint& p, const ProjLine& l) { return p.coords().dot(l.coords()); }

inline ProjLine join(const ProjPoint& p, const ProjPoint& q, double tol = kDefaultTol) {
    const Vec3 c = p.coords().cross(q.coords());
    require(c.norm() > tol, ErrorCode::CoincidentPoints, "join of coincident points");
    return ProjLine(c);
}

inline ProjPoint meet(const ProjLine& l, const ProjLine& m, double tol = kDefaultTol) {
    const Vec3 c = l.coords().cross(m.coords());
    require(c.norm() > tol, ErrorCode::CoincidentLines, "meet of coincident lines");
    return ProjPoint(c);
}

// Cross ratio [p:x:y:q] = (|p-y| |q-x|) / (|p-x| |q-y|) in any affine chart
// containing the four points; computed chart-free from 2x2 minors on the line.
inline double cross_ratio(const ProjPoint& p, const ProjPoint& x, const ProjPoint& y, const ProjPoint& q,
                          double tol = 1e-10) {
    require(!p.approx_equal(x, tol) && !q.approx_equal(y, tol), ErrorCode::CoincidentEndpoints,
            "cross ratio with coincident endpoints");
    const Vec3* pts[4] = {&p.coords(), &x.coords(), &y.coords(), &q.coords()};
    Vec3 n = Vec3::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const Vec3 c = pts[i]->cross(*pts[j]);
            if (c.norm() > n.norm()) n = c;
        }
    n.normalize();
    for (const Vec3* v : pts)
        require(std::abs(v->dot(n)) <= tol, ErrorCode::NonCollinear, "cross ratio of non-collinear points");
    auto br = [&](const Vec3& a, const Vec3& b) { return a.cross(b).dot(n); };
    const double num = br(*pts[0], *pts[2]) * br(*pts[3], *pts[1]);
    const double den = br(*pts[0], *pts[1]) * br(*pts[3], *pts[2]);
    require(den != 0.0, ErrorCode::CoincidentEndpoints, "cross ratio denominator vanishes");
    return num / den;
}

// Affine chart {v : e.v = 1} with origin o and tangent basis b1, b2 (e.b = 0).
class AffineChart {
public:
    AffineChart() : AffineChart(Vec3(0, 0, 1), Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0, 1, 0)) {}

    AffineChart(const Vec3& e, const Vec3& origin, const Vec3& b1, const Vec3& b2) : e_(e), o_(origin) {
        require(std::abs(e.dot(origin) - 1.0) < 1e-9 && std::abs(e.dot(b1)) < 1e-9 && std::abs(e.dot(b2)) < 1e-9,
                ErrorCode::DegenerateInput, "inconsistent affine chart");
        basis_.col(0) = b1;
        basis_.col(1) = b2;
        basis_.col(2) = origin;
        require(std::abs(basis_.determinant()) > 1e-14, ErrorCode::DegenerateInput, "degenerate chart basis");
        inverse_ = basis_.inverse();
    }

    static AffineChart standard() { return AffineChart(); }

    // Chart whose line at infinity is the covector e, with orthonormal tangent basis.
    static AffineChart from_covector(const Vec3& e) {
        const double n2 = e.squaredNorm();
        require(n2 > 0.0, ErrorCode::DegenerateInput, "zero covector");
        auto [a, b] = orthonormal_complement(e);
        return AffineChart(e, e / n2, a, b);
    }

    const Vec3& covector() const { return e_; }
    const Vec3& origin() const { return o_; }
    Vec3 b1() const { return basis_.col(0); }
    Vec3 b2() const { return basis_.col(1); }

    bool sees(const Vec3& v, double tol = 1e-14) const { return std::abs(e_.dot(v)) > tol * v.norm(); }

    Vec3 lift(const Vec2& u) const { return o_ + u.x() * basis_.col(0) + u.y() * basis_.col(1); }
    Vec3 tangent(const Vec2& w) const { return w.x() * basis_.col(0) + w.y() * basis_.col(1); }

    Vec2 project(const Vec3& v) const {
        const double s = e_.dot(v);
        require(s != 0.0, ErrorCode::DegenerateInput, "point on the line at infinity of the chart");
        const Vec3 c = inverse_ * (v / s);
        return {c[0], c[1]};
    }
    Vec2 project(const ProjPoint& p) const { return project(p.coords()); }

private:
    Vec3 e_, o_;
    Mat3 basis_, inverse_;
};

// Symmetric form of signature (2,1), stored with unit Frobenius norm and sign
// chosen so that the convex side is {q < 0}.
class Conic {
public:
    explicit Conic(const Mat3& m) {
        Mat3 s = 0.5 * (m + m.transpose());
        const double n = s.norm();
        require(std::isfinite(n) && n > 0.0, ErrorCode::DegenerateConic, "zero conic");
        s /= n;
        Eigen::SelfAdjointEigenSolver<Mat3> es(s);
        const Vec3 ev = es.eigenvalues();
        const double scale = ev.cwiseAbs().maxCoeff();
        require(std::abs(ev[0]) > 1e-12 * scale && std::abs(ev[1]) > 1e-12 * scale &&
                    std::abs(ev[2]) > 1e-12 * scale,
                ErrorCode::DegenerateConic, "singular conic");
        const int neg = (ev.array() < 0).count();
        require(neg == 1 || neg == 2, ErrorCode::DegenerateConic, "definite form has no real points");
        if (neg == 2) s = -s;
        q_ = s;
    }

    const Mat3& matrix() const { return q_; }
    double operator()(const Vec3& v) const { return v.dot(q_ * v); }
    double polar(const Vec3& a, const Vec3& b) const { return a.dot(q_ * b); }

private:
    Mat3 q_;
};

// Real intersection points of a line with a conic (0, 1 for tangency, or 2).
inline std::vector<ProjPoint> line_conic_intersection(const Conic& c, const ProjLine& l, double tol = 1e-10) {
    auto [p1, p2] = orthonormal_complement(l.coords());
    const double a = c(p1), b = c.polar(p1, p2), cc = c(p2);
    const double disc = b * b - a * cc;
    const double scale = std::max({a * a, b * b, cc * cc, 1e-300});
    if (disc < -tol * scale) return {};
    if (disc <= tol * scale) {
        const Vec3 v = std::abs(a) >= std::abs(cc) ? Vec3(-b * p1 + a * p2) : Vec3(cc * p1 - b * p2);
        return {ProjPoint(v)};
    }
    const double r = std::sqrt(disc);
    if (std::abs(a) >= std::abs(cc)) return {ProjPoint((-b + r) * p1 + a * p2), ProjPoint((-b - r) * p1 + a * p2)};
    return {ProjPoint(cc * p1 + (-b + r) * p2), ProjPoint(cc * p1 + (-b - r) * p2)};
}

// Value in the extended reals: finite, or the dedicated infinite result.
class Extended {
public:
    explicit Extended(double v) : value_(v), infinite_(false) {}
    static Extended infinite() {
        Extended e(0.0);
        e.infinite_ = true;
        return e;
    }
    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }
    double value() const {
        require(!infinite_, ErrorCode::DegenerateInput, "value of an infinite extended real");
        return value_;
    }
    double value_or(double fallback) const { return infinite_ ? fallback : value_; }

private:
    double value_;
    bool infinite_;
};

}  // namespace hilbertine
