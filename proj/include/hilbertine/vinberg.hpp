#pragma once

#include <vector>

#include "hilbertine/dynamics.hpp"

namespace hilbertine {

// Proper convex cone of R^3: simplicial, polyhedral (generators in cyclic order)
// or Lorentzian {v : q(v) < 0} on the sheet of a time vector.
class ConvexCone {
public:
    enum class Kind { Simplicial, Polyhedral, Lorentz };

    static ConvexCone simplicial(const Vec3& g1, const Vec3& g2, const Vec3& g3) {
        require(std::abs(det3(g1.normalized(), g2.normalized(), g3.normalized())) > 1e-12, ErrorCode::NotProper,
                "simplicial generators are linearly dependent");
        ConvexCone c = polyhedral({g1, g2, g3});
        c.kind_ = Kind::Simplicial;
        return c;
    }

    static ConvexCone polyhedral(const std::vector<Vec3>& generators) {
        ConvexCone c;
        c.kind_ = generators.size() == 3 ? Kind::Simplicial : Kind::Polyhedral;
        try {
            const ConvexDomain d = ConvexDomain::polygon(generators);
            c.rays_ = d.vertices();
            c.dual_rays_ = d.lines();
        } catch (const Error& e) {
            fail(ErrorCode::NotProper, e.what());
        }
        return c;
    }

    static ConvexCone lorentz(const Mat3& q, const Vec3& time) {
        ConvexCone c;
        c.kind_ = Kind::Lorentz;
        const Conic conic(q);
        c.q_ = conic.matrix();
        require(time.dot(c.q_ * time) < 0, ErrorCode::NotProper, "time vector is not inside the cone");
        c.time_ = time.normalized();
        return c;
    }

    static ConvexCone from_domain(const ConvexDomain& dom) {
        if (dom.kind() == ConvexDomain::Kind::Conic) return lorentz(dom.conic().matrix(), dom.center());
        return polyhedral(dom.vertices());
    }

    Kind kind() const { return kind_; }
    const std::vector<Vec3>& rays() const { return rays_; }
    const std::vector<Vec3>& dual_rays() const { return dual_rays_; }
    const Mat3& form() const { return q_; }
    const Vec3& time() const { return time_; }

    ConvexDomain domain() const {
        if (kind_ == Kind::Lorentz) return ConvexDomain::conic(Conic(q_));
        return ConvexDomain::polygon(rays_);
    }

    bool is_interior(const Vec3& m) const {
        if (kind_ == Kind::Lorentz) return m.dot(q_ * m) < 0 && m.dot(q_ * time_) < 0;
        for (const auto& f : dual_rays_)
            if (!(f.dot(m) > 0)) return false;
        return true;
    }

    // Representative of the ray of x inside the cone.
    Vec3 lift(const Vec3& x) const {
        const Vec3 ref = kind_ == Kind::Lorentz ? Vec3(-q_ * time_) : dual_rays_.front();
        return ref.dot(x) < 0 ? Vec3(-x) : x;
    }

private:
    ConvexCone() = default;
    Kind kind_ = Kind::Simplicial;
    std::vector<Vec3> rays_, dual_rays_;
    Mat3 q_ = Mat3::Identity();
    Vec3 time_ = Vec3::UnitZ();
};

inline ConvexCone dual_cone(const ConvexCone& c) {
    if (c.kind() == ConvexCone::Kind::Lorentz) return ConvexCone::lorentz(c.form().inverse(), -c.form() * c.time());
    if (c.kind() == ConvexCone::Kind::Simplicial)
        return ConvexCone::simplicial(c.dual_rays()[0], c.dual_rays()[1], c.dual_rays()[2]);
    return ConvexCone::polyhedral(c.dual_rays());
}

namespace detail {

// Gauss-Legendre nodes and weights on [0, 1].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre01(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5)), dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0, p1 = z;
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = 0.5 * (1.0 - z);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

// Cross-section {f in C* : f.u = 1} of the dual of a Lorentz cone, u the unit time
// vector of C: an ellipse c + a1 cos + a2 sin.
struct DualSection {
    Vec3 center, a1, a2;
    double area_factor;  // |a1 x a2|
};

inline DualSection dual_section(const ConvexCone& c) {
    const Mat3 p = c.form().inverse();
    const Vec3 u = c.time();
    auto [c1, c2] = orthonormal_complement(u);
    // f = u + y1 c1 + y2 c2 ; f^T p f = y^T A y + 2 b.y + c0.
    Mat2 a;
    a << c1.dot(p * c1), c1.dot(p * c2), c1.dot(p * c2), c2.dot(p * c2);
    const Vec2 b(u.dot(p * c1), u.dot(p * c2));
    const double c0 = u.dot(p * u);
    const Vec2 ys = -a.ldlt().solve(b);
    const double r = b.dot(a.ldlt().solve(b)) - c0;
    Eigen::SelfAdjointEigenSolver<Mat2> es(a);
    DualSection s;
    s.center = u + ys.x() * c1 + ys.y() * c2;
    const Vec2 e1 = es.eigenvectors().col(0) * std::sqrt(r / es.eigenvalues()[0]);
    const Vec2 e2 = es.eigenvectors().col(1) * std::sqrt(r / es.eigenvalues()[1]);
    s.a1 = e1.x() * c1 + e1.y() * c2;
    s.a2 = e2.x() * c1 + e2.y() * c2;
    s.area_factor = s.a1.cross(s.a2).norm();
    return s;
}

// (phi, displayed gradient) for a Lorentz cone by tensor quadrature on the
// section: Gauss-Legendre in the radius, trapezoid in the (periodic) angle,
// refined until both change by less than rel_tol.
inline std::pair<double, Vec3> lorentz_phi(const ConvexCone& c, const Vec3& m, double rel_tol) {
    const DualSection s = dual_section(c);
    auto eval = [&](int nr, int na) {
        const auto [xr, wr] = gauss_legendre01(nr);
        double phi = 0.0;
        Vec3 grad = Vec3::Zero();
        for (int j = 0; j < na; ++j) {
            const double a = 2.0 * kPi * j / na;
            const Vec3 dir = std::cos(a) * s.a1 + std::sin(a) * s.a2;
            for (int i = 0; i < nr; ++i) {
                const Vec3 f = s.center + xr[i] * dir;
                const double fm = f.dot(m);
                const double w = wr[i] * xr[i] / (fm * fm * fm);
                phi += w;
                grad += (w / fm) * f;
            }
        }
        const double k = s.area_factor * 2.0 * kPi / na;
        return std::make_pair(2.0 * k * phi, Vec3(6.0 * k * grad));
    };
    int nr = 16, na = 32;
    auto prev = eval(nr, na);
    for (int it = 0; it < 12; ++it) {
        nr *= 2;
        na *= 2;
        auto cur = eval(nr, na);
        const bool ok = std::abs(cur.first - prev.first) <= rel_tol * cur.first &&
                        (cur.second - prev.second).norm() <= rel_tol * cur.second.norm();
        prev = cur;
        if (ok) return prev;
    }
    fail(ErrorCode::NonConvergent, "Lorentz characteristic function quadrature did not converge");
}

}  // namespace detail

// Vinberg's characteristic function phi(M) = integral over C* of exp(-f(M)) df.
inline double characteristic_function(const ConvexCone& c, const Vec3& m, double rel_tol = 1e-10) {
    require(c.is_interior(m), ErrorCode::NotInterior, "characteristic function outside the cone");
    if (c.kind() == ConvexCone::Kind::Lorentz) return detail::lorentz_phi(c, m, rel_tol).first;
    const auto& f = c.dual_rays();
    double phi = 0.0;
    for (std::size_t j = 1; j + 1 < f.size(); ++j)
        phi += std::abs(det3(f[0], f[j], f[j + 1])) / (f[0].dot(m) * f[j].dot(m) * f[j + 1].dot(m));
    return phi;
}

// The displayed integral of f exp(-f(M)) df; the derivative of phi is its negative.
inline Vec3 char_gradient(const ConvexCone& c, const Vec3& m, double rel_tol = 1e-10) {
    require(c.is_interior(m), ErrorCode::NotInterior, "gradient outside the cone");
    if (c.kind() == ConvexCone::Kind::Lorentz) return detail::lorentz_phi(c, m, rel_tol).second;
    const auto& f = c.dual_rays();
    Vec3 g = Vec3::Zero();
    for (std::size_t j = 1; j + 1 < f.size(); ++j) {
        const double a = f[0].dot(m), b = f[j].dot(m), d = f[j + 1].dot(m);
        const double t = std::abs(det3(f[0], f[j], f[j + 1])) / (a * b * d);
        g += t * (f[0] / a + f[j] / b + f[j + 1] / d);
    }
    return g;
}

// Point of the level set phi = 1 on the ray of x.
inline Vec3 sigma_lift(const ConvexCone& c, const ProjPoint& x, double rel_tol = 1e-12) {
    const Vec3 v = c.lift(x.coords());
    require(c.is_interior(v), ErrorCode::NotInterior, "point outside the projected cone");
    return v * std::cbrt(characteristic_function(c, v, rel_tol));
}

struct PsiForm {
    Vec3 base;  // X with phi(X) = 1
    Vec3 psi;   // tangent plane {psi = 1} to the level set at X
};

inline PsiForm psi_form(const ConvexCone& c, const Vec3& x, double tol = 1e-8) {
    require(std::abs(characteristic_function(c, x) - 1.0) <= tol, ErrorCode::NotOnSigma,
            "base point is not on the level set phi = 1");
    const Vec3 g = char_gradient(c, x);
    return {x, g / g.dot(x)};
}

// theta(x) = [grad / phi], the centroid of {f in C* : f(v) = 3}, as a point of the dual plane.
inline ProjPoint dual_map_theta(const ConvexDomain& dom, const ProjPoint& x) {
    require(contains(dom, x), ErrorCode::NotInterior, "dual map outside the domain");
    const ConvexCone c = ConvexCone::from_domain(dom);
    const Vec3 v = c.lift(x.coords());
    return ProjPoint(Vec3(char_gradient(c, v) / characteristic_function(c, v)));
}

struct Bisector {
    ProjLine line;
    Vec3 inward;  // nonnegative exactly where psi(X) <= psi(g X)
};

inline Bisector bisector(const ConvexCone& c, const Vec3& x0, const ProjTransform& g) {
    const Vec3 gx = g.matrix() * x0;
    require((gx - x0).norm() > 1e-10 * x0.norm(), ErrorCode::FixedBasePoint, "base point is fixed");
    const Vec3 psi = psi_form(c, x0).psi;
    const Vec3 mu = g.matrix().transpose() * psi - psi;
    return {ProjLine(mu), mu};
}

// Intersection of the cone's domain with the bisector half-planes of the given
// elements. The domain object is a half-plane intersection; for a Lorentz cone
// its boundary is represented by n_tangents tangent lines.
struct DirichletLeeDomain {
    ConvexDomain base;
    Vec3 x0;
    std::vector<ProjTransform> elements;
    std::vector<Vec3> bisectors;
    ConvexDomain domain;

    bool contains(const Vec3& v, double margin = 0.0) const {
        if (locate(base, v) != Location::Interior) return false;
        const Vec3 w = base.lift(v).normalized();
        for (const auto& b : bisectors)
            if (b.normalized().dot(w) <= margin) return false;
        return true;
    }
};

inline DirichletLeeDomain dirichlet_lee_domain(const ConvexCone& c, const std::vector<ProjTransform>& elements,
                                               const Vec3& x0, int n_tangents = 512) {
    DirichletLeeDomain d{c.domain(), x0, elements, {}, c.domain()};
    for (const auto& g : elements) {
        try {
            d.bisectors.push_back(bisector(c, x0, g).inward);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::FixedBasePoint) fail(ErrorCode::StabilizedBasePoint, "an element fixes x0");
            throw;
        }
    }
    if (elements.empty()) return d;
    std::vector<Vec3> lines;
    if (c.kind() == ConvexCone::Kind::Lorentz) {
        for (const auto& b : boundary_samples(d.base, n_tangents)) lines.push_back(-c.form() * b);
    } else {
        lines = c.dual_rays();
    }
    lines.insert(lines.end(), d.bisectors.begin(), d.bisectors.end());
    d.domain = ConvexDomain::halfplanes(lines, x0);
    return d;
}

}  // namespace hilbertine
