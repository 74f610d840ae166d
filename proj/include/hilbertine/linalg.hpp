#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hilbertine/error.hpp"

namespace hilbertine {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Rescale to unit determinant with the real cube root.
inline Mat3 unimodular(const Mat3& m) {
    const double d = m.determinant();
    require(std::isfinite(d) && std::abs(d) > 1e-300, ErrorCode::DegenerateInput, "singular matrix");
    return m / std::cbrt(d);
}

// Orthonormal basis of the plane orthogonal to n.
inline std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& n) {
    const Vec3 u = n.normalized();
    int k = 0;
    u.cwiseAbs().minCoeff(&k);
    Vec3 t = Vec3::Zero();
    t[k] = 1.0;
    const Vec3 a = (t - u.dot(t) * u).normalized();
    return {a, u.cross(a)};
}

// Columns span the numerical null space, singular values below rel_tol * largest.
inline Eigen::MatrixXd null_space(const Mat3& m, double rel_tol) {
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = rel_tol * std::max(s[0], 1e-300);
    int rank = 0;
    for (int i = 0; i < 3; ++i)
        if (s[i] > cut) ++rank;
    return svd.matrixV().rightCols(3 - rank);
}

inline double signed_area(const std::vector<Vec2>& poly) {
    double a = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) a += cross2(poly[i], poly[(i + 1) % n]);
    return 0.5 * a;
}

// Andrew monotone chain; counter-clockwise, collinear points dropped.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    auto turn = [](const Vec2& o, const Vec2& a, const Vec2& b) { return cross2(a - o, b - o); };
    for (const auto& p : pts) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// Minkowski sum of two convex counter-clockwise polygons.
inline std::vector<Vec2> minkowski_sum(const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
    auto lowest = [](const std::vector<Vec2>& v) {
        std::size_t b = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i].y() < v[b].y() || (v[i].y() == v[b].y() && v[i].x() < v[b].x())) b = i;
        return b;
    };
    const std::size_t n = p.size(), m = q.size();
    const std::size_t i0 = lowest(p), j0 = lowest(q);
    std::vector<Vec2> out;
    out.reserve(n + m);
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        out.push_back(p[(i0 + i) % n] + q[(j0 + j) % m]);
        const Vec2 ep = p[(i0 + i + 1) % n] - p[(i0 + i) % n];
        const Vec2 eq = q[(j0 + j + 1) % m] - q[(j0 + j) % m];
        const double c = cross2(ep, eq);
        if (j >= m || (i < n && c > 0)) ++i;
        else if (i >= n || c < 0) ++j;
        else { ++i; ++j; }
    }
    return out;
}

// Lebesgue area of {v : w.v <= 1 for all w in P}, P convex, ccw, origin inside.
inline double polar_area(const std::vector<Vec2>& p) {
    const std::size_t n = p.size();
    std::vector<Vec2> u;
    u.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2& a = p[j];
        const Vec2& b = p[(j + 1) % n];
        const double d = cross2(a, b);
        if (d <= 0.0) continue;
        u.emplace_back((b.y() - a.y()) / d, (a.x() - b.x()) / d);
    }
    return std::abs(signed_area(u));
}

inline double frobenius(const Mat3& m) { return m.norm(); }

}  // namespace hilbertine
