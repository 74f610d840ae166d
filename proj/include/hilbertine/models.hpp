#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "hilbertine/surface.hpp"

// Standard domains and groups used by the experiments and tests.
namespace hilbertine::models {

inline ConvexDomain simplex() { return ConvexDomain::polygon(std::vector<Vec3>{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}); }

// {x^2 + y^2 < z^2}: the unit disk of the chart z = 1.
inline ConvexDomain unit_disk() {
    Mat3 q = Mat3::Identity();
    q(2, 2) = -1.0;
    return ConvexDomain::conic(Conic(q));
}

// Ideal triangle with vertices [1:1:0], [0:1:1], [x:0:1] in the simplex.
inline std::array<ProjPoint, 3> simplex_ideal_triangle(double x) {
    return {ProjPoint(1, 1, 0), ProjPoint(0, 1, 1), ProjPoint(x, 0, 1)};
}

// Outer polygonal model of {x > 0, y > x ln x} in the chart z = 1: the lines
// x = 0 and z = 0 plus the tangent lines to y = x ln x at n points spaced
// geometrically in [x_min, x_max].
inline ConvexDomain log_cusp_domain(int n = 1024, double x_min = 1e-14, double x_max = 1e4) {
    std::vector<Vec3> lines{Vec3(1, 0, 0), Vec3(0, 0, 1)};
    const double r = std::log(x_max / x_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double xi = x_min * std::exp(r * i);
        lines.emplace_back(-(std::log(xi) + 1.0), 1.0, xi);
    }
    return ConvexDomain::halfplanes(lines, Vec3(0.5, 1.0, 1.0));
}

// Isometries of the unit disk {x^2 + y^2 < z^2}.
inline Mat3 disk_boost(double t) {
    Mat3 m = Mat3::Identity();
    m(0, 0) = m(2, 2) = std::cosh(t);
    m(0, 2) = m(2, 0) = std::sinh(t);
    return m;
}

inline Mat3 disk_rotation(double th) {
    Mat3 m = Mat3::Identity();
    m(0, 0) = m(1, 1) = std::cos(th);
    m(0, 1) = -std::sin(th);
    m(1, 0) = std::sin(th);
    return m;
}

// exp(s A) with A nilpotent in so(2,1), fixing [1:0:-1] on the circle.
inline Mat3 disk_parabolic(double s) {
    Mat3 a;
    a << 0, -1, 0, 1, 0, 1, 0, 1, 0;
    return Mat3::Identity() + s * a + 0.5 * s * s * a * a;
}

// SL2(R) -> SO(2,1) acting on binary quadratic forms u s^2 + v s t + w t^2 by
// P -> P o A^-1; it preserves the discriminant v^2 - 4uw.
inline Mat3 sym2(const Mat2& a) {
    const Mat2 b = a.inverse();
    const double p = b(0, 0), q = b(0, 1), r = b(1, 0), s = b(1, 1);
    // P(p s + q t, r s + s' t) expanded in the monomials s^2, st, t^2.
    Mat3 m;
    m << p * p, p * r, r * r,
         2 * p * q, p * s + q * r, 2 * r * s,
         q * q, q * s, s * s;
    return m;
}

// Definite binary forms: the interior of the discriminant conic.
inline ConvexDomain discriminant_disk() {
    Mat3 q = Mat3::Zero();
    q(1, 1) = 1.0;
    q(0, 2) = q(2, 0) = -2.0;
    return ConvexDomain::conic(Conic(q));
}

// Once-punctured torus group: A, B in SL2(R) with tr A = tr B = tr AB = t.
// For t = 3 the commutator is parabolic (the cusp); for t > 3 it is hyperbolic.
inline std::array<Mat2, 2> punctured_torus_pair(double t) {
    const double lam = 0.5 * (t + std::sqrt(t * t - 4.0));
    Mat2 a;
    a << lam, 0, 0, 1.0 / lam;
    const double p = t / (lam + 1.0), s = t * lam / (lam + 1.0);
    const double off = std::sqrt(p * s - 1.0);
    Mat2 b;
    b << p, off, off, s;
    return {a, b};
}

inline GroupPresentation punctured_torus_group(double t = 3.0) {
    const auto ab = punctured_torus_pair(t);
    return {{ProjTransform(sym2(ab[0])), ProjTransform(sym2(ab[1]))}, {"a", "b"}, discriminant_disk()};
}

inline ProjTransform commutator(const ProjTransform& a, const ProjTransform& b) {
    return a * b * a.inverse() * b.inverse();
}

// Orientation-preserving (2,3,7) triangle group in the unit disk: a is the
// half-turn about the center, b the rotation by 2 pi / 3 about the vertex at
// distance c with cosh c = cos(pi/7) / sin(pi/3); ab has order 7.
inline GroupPresentation triangle_group_237() {
    const double c = std::acosh(std::cos(kPi / 7.0) / std::sin(kPi / 3.0));
    const Mat3 a = disk_rotation(kPi);
    const Mat3 b = disk_boost(c) * disk_rotation(2.0 * kPi / 3.0) * disk_boost(-c);
    return {{ProjTransform(a), ProjTransform(b)}, {"a", "b"}, unit_disk()};
}

}  // namespace hilbertine::models
