#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "hilbertine/hilbertine.hpp"

namespace testing_support {

using namespace hilbertine;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(gen_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

    Vec2 in_disk(double r = 1.0) {
        const double rho = r * std::sqrt(uniform()), th = uniform(0.0, 2.0 * kPi);
        return {rho * std::cos(th), rho * std::sin(th)};
    }

    // Random matrix with condition number at most max_cond.
    Mat3 well_conditioned(double max_cond = 50.0) {
        for (;;) {
            Mat3 m;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m(i, j) = normal();
            const Vec3 s = Eigen::JacobiSVD<Mat3>(m).singularValues();
            if (s[0] / s[2] <= max_cond) return unimodular(m.determinant() < 0 ? Mat3(-m) : m);
        }
    }

    // Random non-degenerate triangle inside the disk of radius r.
    std::vector<Vec2> triangle(double r = 1.0) {
        for (;;) {
            std::vector<Vec2> t{in_disk(r), in_disk(r), in_disk(r)};
            if (std::abs(cross2(t[1] - t[0], t[2] - t[0])) > 0.05 * r * r) return convex_hull(t);
        }
    }

    // Convex polygon from n random points on a circle of radius r.
    std::vector<Vec2> polygon(int n, double r = 1.0) {
        for (;;) {
            std::vector<Vec2> pts;
            for (int i = 0; i < n; ++i) {
                const double th = uniform(0.0, 2.0 * kPi);
                pts.emplace_back(r * std::cos(th), r * std::sin(th));
            }
            auto h = convex_hull(pts);
            if (h.size() >= 3 && std::abs(signed_area(h)) > 0.2 * r * r) return h;
        }
    }

    // Point uniformly distributed in a convex chart polygon, kept away from the edges.
    Vec2 in_polygon(const std::vector<Vec2>& poly, double shrink = 0.98) {
        Vec2 c = Vec2::Zero();
        for (const auto& p : poly) c += p;
        c /= static_cast<double>(poly.size());
        const double total = std::abs(signed_area(poly));
        double pick = uniform(0.0, total), acc = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
            acc += 0.5 * std::abs(cross2(a - c, b - c));
            if (acc >= pick || i + 1 == poly.size()) {
                double u = uniform(), v = uniform();
                if (u + v > 1.0) u = 1.0 - u, v = 1.0 - v;
                return c + shrink * (u * (a - c) + v * (b - c));
            }
        }
        return c;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline ConvexDomain chart_polygon(const std::vector<Vec2>& pts) { return ConvexDomain::polygon(pts, AffineChart{}); }

// Ellipse (x - c)^T A (x - c) < 1 in the chart z = 1.
inline ConvexDomain chart_ellipse(const Mat2& a, const Vec2& c) {
    Mat3 q = Mat3::Zero();
    q.topLeftCorner<2, 2>() = a;
    const Vec2 ac = a * c;
    q(0, 2) = q(2, 0) = -ac.x();
    q(1, 2) = q(2, 1) = -ac.y();
    q(2, 2) = c.dot(ac) - 1.0;
    return ConvexDomain::conic(Conic(q));
}

inline ProjPoint pt(const Vec2& v) { return ProjPoint(v.x(), v.y(), 1.0); }

}  // namespace testing_support
