#pragma once

#include <Eigen/Eigenvalues>

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "hilbertine/busemann.hpp"
#include "hilbertine/domain.hpp"

namespace hilbertine {

class ProjTransform {
public:
    ProjTransform() : m_(Mat3::Identity()) {}
    explicit ProjTransform(const Mat3& m) : m_(unimodular(m)) {}

    const Mat3& matrix() const { return m_; }
    ProjPoint operator()(const ProjPoint& p) const { return ProjPoint(m_ * p.coords()); }
    ProjLine operator()(const ProjLine& l) const { return ProjLine(m_.inverse().transpose() * l.coords()); }
    ProjTransform operator*(const ProjTransform& o) const { return ProjTransform(m_ * o.m_); }
    ProjTransform inverse() const { return ProjTransform(m_.inverse()); }

    // Frobenius distance between det-1 representatives (sign included).
    double distance(const ProjTransform& o) const { return (m_ - o.m_).norm(); }

private:
    Mat3 m_;
};

enum class Family { Hyperbolic, Planar, QuasiHyperbolic, Parabolic, Elliptic, Identity };

inline std::string to_string(Family f) {
    switch (f) {
    case Family::Hyperbolic: return "Hyperbolic";
    case Family::Planar: return "Planar";
    case Family::QuasiHyperbolic: return "QuasiHyperbolic";
    case Family::Parabolic: return "Parabolic";
    case Family::Elliptic: return "Elliptic";
    case Family::Identity: return "Identity";
    }
    return "Identity";
}

struct HyperbolicData {
    double lambda_plus, lambda_zero, lambda_minus;
    ProjPoint p_plus, p_zero, p_minus;
    ProjLine d_plus_minus, d_plus_zero, d_minus_zero;
};

// p_gamma: the beta eigenpoint; d_gamma: the line of alpha eigenvectors.
struct PlanarData {
    double alpha, beta;
    ProjPoint p_gamma;
    ProjLine d_gamma;
};

// p1: the beta eigenpoint; p2: the alpha eigenpoint; d_gamma: the line of the
// generalized alpha eigenspace.
struct QuasiHyperbolicData {
    double alpha, beta;
    ProjPoint p1, p2;
    ProjLine d_gamma;
};

struct ParabolicData {
    ProjPoint p_gamma;
    ProjLine d_gamma;
};

// Rotation angle in (0, pi]; theta and 2 pi - theta are conjugate in SL3(R).
struct EllipticData {
    double theta;
    ProjPoint fixed_point;
    ProjLine invariant_line;
    bool order_two;
};

struct IdentityData {};

struct DynClass {
    Family family = Family::Identity;
    std::variant<HyperbolicData, PlanarData, QuasiHyperbolicData, ParabolicData, EllipticData, IdentityData> data =
        IdentityData{};
    Mat3 conjugator = Mat3::Identity();  // m = conjugator * normal_form * conjugator^-1
    Mat3 normal_form = Mat3::Identity();
    double margin = 0.0;         // factor by which the decisive residual clears its threshold
    bool near_boundary = false;  // margin below 10

    template <class T>
    const T& as() const {
        const T* p = std::get_if<T>(&data);
        require(p != nullptr, ErrorCode::WrongFamily, "classification is " + to_string(family));
        return *p;
    }
};

namespace detail {

inline Vec3 smallest_right_singular(const Mat3& a) {
    Eigen::JacobiSVD<Mat3> svd(a, Eigen::ComputeFullV);
    return svd.matrixV().col(2);
}

inline Vec3 singular_values(const Mat3& a) { return Eigen::JacobiSVD<Mat3>(a).singularValues(); }

inline Mat3 rotation_block(double th) {
    Mat3 r = Mat3::Identity();
    r(1, 1) = std::cos(th);
    r(1, 2) = -std::sin(th);
    r(2, 1) = std::sin(th);
    r(2, 2) = std::cos(th);
    return r;
}

inline void orient(Mat3& p) {
    if (p.determinant() < 0) p.col(2) = -p.col(2);
}

}  // namespace detail

// Family decisions are made by residual (backward-error) tests relative to
// tol rather than by raw eigenvalue gaps: computed eigenvalues of a defective
// matrix split by about sqrt(machine epsilon), far above any useful tol.
//  - Identity: |m - I| <= tol |m|.
//  - Unipotent: |(m - I)^3| <= tol |m - I|^3; Parabolic if (m - I)^2 is not
//    negligible in the same sense, otherwise a transvection (not compatible).
//  - Double eigenvalue: for the closest eigenvalue pair with real mean a,
//    sigma_2((m - aI)^2) <= tol |m| |m - aI|. Rank one of m - aI means Planar,
//    rank two QuasiHyperbolic; a = -1 with rank one is the order-two rotation.
//  - Otherwise distinct: complex pair with real eigenvalue 1 is Elliptic, all
//    positive real is Hyperbolic, anything else is NotConvexCompatible.
inline DynClass classify(const Mat3& g, double tol = 1e-8) {
    const Mat3 m = unimodular(g);
    const Mat3 id = Mat3::Identity();
    const double nm = m.norm();
    const Mat3 n1 = m - id;
    const double nn = n1.norm();
    DynClass out;

    if (nn <= tol * nm) {
        out.family = Family::Identity;
        out.data = IdentityData{};
        out.margin = tol * nm / std::max(nn, 1e-300);
        out.near_boundary = out.margin < 10;
        return out;
    }

    const Mat3 n2 = n1 * n1, n3 = n2 * n1;
    const double nil3 = n3.norm() / (nn * nn * nn);
    if (nil3 <= tol) {
        const double nil2 = n2.norm() / (nn * nn);
        require(nil2 > tol, ErrorCode::NotConvexCompatible, "transvection preserves no properly convex domain");
        Mat3 p;
        Eigen::JacobiSVD<Mat3> svd(n2, Eigen::ComputeFullV);
        const Vec3 v3 = svd.matrixV().col(0);
        p.col(2) = v3;
        p.col(1) = n1 * v3;
        p.col(0) = n1 * p.col(1);
        out.family = Family::Parabolic;
        out.conjugator = p;
        out.normal_form << 1, 1, 0, 0, 1, 1, 0, 0, 1;
        out.data = ParabolicData{ProjPoint(p.col(0)), ProjLine(Vec3(p.col(0).cross(p.col(1))))};
        out.margin = std::min(tol / std::max(nil3, 1e-300), nil2 / tol);
        out.near_boundary = out.margin < 10;
        return out;
    }

    Eigen::EigenSolver<Mat3> es(m);
    const Eigen::Vector3cd ev = es.eigenvalues();
    const double rho = ev.cwiseAbs().maxCoeff();
    int pi = 0, pj = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(ev[i] - ev[j]) < std::abs(ev[pi] - ev[pj])) {
                pi = i;
                pj = j;
            }
    const int pk = 3 - pi - pj;
    const double a = 0.5 * (ev[pi] + ev[pj]).real();
    const Vec3 sv = detail::singular_values(m - a * id);
    const double nm2 = detail::singular_values(m)[0];
    // A double eigenvalue at a means (m - aI)^2 has rank at most one; a
    // perturbation E moves it by about 2 |E| |m - aI|.
    const Vec3 sq = detail::singular_values((m - a * id) * (m - a * id));
    const double pair_residual = sq[1] / (tol * nm2 * std::max(sv[0], tol * nm2));

    if (pair_residual <= 1.0) {
        const double b = ev[pk].real();
        const bool rank_one = sv[1] <= tol * nm2;
        if (a < 0) {
            require(rank_one && std::abs(b - 1.0) <= 1e-6, ErrorCode::NotConvexCompatible,
                    "negative repeated eigenvalue");
            Mat3 p;
            Eigen::JacobiSVD<Mat3> svd(m + id, Eigen::ComputeFullV);
            p.col(0) = detail::smallest_right_singular(m - id);
            p.col(1) = svd.matrixV().col(1);
            p.col(2) = svd.matrixV().col(2);
            detail::orient(p);
            out.family = Family::Elliptic;
            out.conjugator = p;
            out.normal_form = detail::rotation_block(kPi);
            out.data = EllipticData{kPi, ProjPoint(p.col(0)), ProjLine(Vec3(p.col(1).cross(p.col(2)))), true};
            out.margin = std::min(1.0 / std::max(pair_residual, 1e-300), 1.0 / std::max(sv[1] / (tol * nm2), 1e-300));
            out.near_boundary = out.margin < 10;
            return out;
        }
        require(b > 0, ErrorCode::NotConvexCompatible, "negative simple eigenvalue");
        const Vec3 vb = detail::smallest_right_singular(m - b * id);
        if (rank_one) {
            Eigen::JacobiSVD<Mat3> svd(m - a * id, Eigen::ComputeFullV);
            Mat3 p;
            p.col(0) = svd.matrixV().col(1);
            p.col(1) = svd.matrixV().col(2);
            p.col(2) = vb;
            detail::orient(p);
            out.family = Family::Planar;
            out.conjugator = p;
            out.normal_form = Vec3(a, a, b).asDiagonal();
            out.data = PlanarData{a, b, ProjPoint(vb), ProjLine(Vec3(p.col(0).cross(p.col(1))))};
            out.margin = std::min(1.0 / std::max(pair_residual, 1e-300), tol * nm2 / std::max(sv[1], 1e-300));
        } else {
            // Generalized alpha eigenspace = range(m - bI); v2 is the direction
            // of it moved most by m - aI, v1 = (m - aI) v2 the eigenvector.
            Eigen::JacobiSVD<Mat3> rb(m - b * id, Eigen::ComputeFullU);
            Eigen::Matrix<double, 3, 2> u = rb.matrixU().leftCols(2);
            const Eigen::Matrix<double, 3, 2> img = (m - a * id) * u;
            Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> s2(img, Eigen::ComputeFullV);
            const Vec3 v2 = u * s2.matrixV().col(0);
            const Vec3 v1 = (m - a * id) * v2;
            Mat3 p;
            p.col(0) = v1;
            p.col(1) = v2;
            p.col(2) = vb;
            detail::orient(p);
            out.family = Family::QuasiHyperbolic;
            out.conjugator = p;
            out.normal_form << a, 1, 0, 0, a, 0, 0, 0, b;
            out.data = QuasiHyperbolicData{a, b, ProjPoint(vb), ProjPoint(v1), ProjLine(Vec3(v1.cross(v2)))};
            out.margin = std::min(1.0 / std::max(pair_residual, 1e-300), sv[1] / (tol * nm2));
        }
        out.near_boundary = out.margin < 10;
        return out;
    }

    out.margin = std::min(pair_residual, nil3 / tol);
    out.near_boundary = out.margin < 10;
    int complex_idx = -1;
    for (int i = 0; i < 3; ++i)
        if (ev[i].imag() > 0) complex_idx = i;
    if (complex_idx >= 0) {
        int real_idx = 0;
        for (int i = 0; i < 3; ++i)
            if (ev[i].imag() == 0.0) real_idx = i;
        const double r = ev[real_idx].real();
        require(std::abs(r - 1.0) <= std::max(tol, 1e-12) * std::max(1.0, rho) * 100.0, ErrorCode::NotConvexCompatible,
                "complex eigenvalues with real eigenvalue different from 1");
        const Eigen::Vector3cd v = es.eigenvectors().col(complex_idx);
        Mat3 p;
        p.col(0) = detail::smallest_right_singular(m - id);
        p.col(1) = v.imag();
        p.col(2) = v.real();
        if (p.determinant() < 0) p.col(0) = -p.col(0);
        const double th = std::arg(ev[complex_idx]);
        out.family = Family::Elliptic;
        out.conjugator = p;
        out.normal_form = detail::rotation_block(th);
        out.data = EllipticData{th, ProjPoint(p.col(0)), ProjLine(Vec3(p.col(1).cross(p.col(2)))), false};
        return out;
    }

    std::array<double, 3> lam{ev[0].real(), ev[1].real(), ev[2].real()};
    std::sort(lam.begin(), lam.end(), std::greater<>());
    require(lam[2] > 0, ErrorCode::NotConvexCompatible, "negative real eigenvalue");
    Mat3 p;
    for (int i = 0; i < 3; ++i) p.col(i) = detail::smallest_right_singular(m - lam[i] * id);
    detail::orient(p);
    out.family = Family::Hyperbolic;
    out.conjugator = p;
    out.normal_form = Vec3(lam[0], lam[1], lam[2]).asDiagonal();
    const Vec3 vp = p.col(0), v0 = p.col(1), vm = p.col(2);
    out.data = HyperbolicData{lam[0],          lam[1],          lam[2],          ProjPoint(vp),
                              ProjPoint(v0),   ProjPoint(vm),   ProjLine(Vec3(vp.cross(vm))),
                              ProjLine(Vec3(vp.cross(v0))), ProjLine(Vec3(vm.cross(v0)))};
    return out;
}

inline DynClass classify(const ProjTransform& g, double tol = 1e-8) { return classify(g.matrix(), tol); }

// ---------------------------------------------------------------------------
// Powers and logarithms

namespace detail {

// Real logarithm of a normal form with positive spectrum.
inline Mat3 normal_log(const DynClass& c) {
    const Mat3& j = c.normal_form;
    Mat3 l = Mat3::Zero();
    switch (c.family) {
    case Family::Identity: break;
    case Family::Hyperbolic:
    case Family::Planar:
        for (int i = 0; i < 3; ++i) l(i, i) = std::log(j(i, i));
        break;
    case Family::QuasiHyperbolic:
        l(0, 0) = l(1, 1) = std::log(j(0, 0));
        l(0, 1) = 1.0 / j(0, 0);
        l(2, 2) = std::log(j(2, 2));
        break;
    case Family::Parabolic:
        l << 0, 1, -0.5, 0, 0, 1, 0, 0, 0;
        break;
    case Family::Elliptic: {
        const double th = c.as<EllipticData>().theta;
        l(1, 2) = -th;
        l(2, 1) = th;
        break;
    }
    }
    return l;
}

inline Mat3 normal_power(const DynClass& c, double t) {
    const Mat3& j = c.normal_form;
    Mat3 r = Mat3::Identity();
    switch (c.family) {
    case Family::Identity: break;
    case Family::Hyperbolic:
    case Family::Planar:
        for (int i = 0; i < 3; ++i) r(i, i) = std::pow(j(i, i), t);
        break;
    case Family::QuasiHyperbolic: {
        const double a = j(0, 0), at = std::pow(a, t);
        r(0, 0) = r(1, 1) = at;
        r(0, 1) = t * at / a;
        r(2, 2) = std::pow(j(2, 2), t);
        break;
    }
    case Family::Parabolic:
        r << 1, t, 0.5 * t * (t - 1), 0, 1, t, 0, 0, 1;
        break;
    case Family::Elliptic: r = rotation_block(t * c.as<EllipticData>().theta); break;
    }
    return r;
}

}  // namespace detail

// gamma^t through the real logarithm of the normal form.
inline ProjTransform one_param_power(const ProjTransform& g, double t, double tol = 1e-8) {
    const DynClass c = classify(g, tol);
    if (c.family == Family::Elliptic)
        require(t == std::round(t), ErrorCode::NoRealLogarithm, "non-integral power of an elliptic element");
    const Mat3& p = c.conjugator;
    return ProjTransform(p * detail::normal_power(c, t) * p.inverse());
}

// Real logarithm of g (elliptic: the rotation generator with angle theta).
inline Mat3 real_log(const DynClass& c) {
    const Mat3& p = c.conjugator;
    return p * detail::normal_log(c) * p.inverse();
}

// ---------------------------------------------------------------------------
// Axes, sectors, pencils, orbits

struct Axis {
    enum class Kind { Principal, Secondary };
    ProjPoint a, b;
    Kind kind;
};

inline bool preserves_domain(const ProjTransform& g, const ConvexDomain& dom, int n_samples = 256, double tol = 1e-9) {
    if (dom.kind() == ConvexDomain::Kind::Conic) {
        const Mat3& q = dom.conic().matrix();
        const Mat3 t = g.matrix().transpose() * q * g.matrix();
        const double s = t.norm();
        // Congruence up to a positive multiple keeps the same sheet and side. Rounding in
        // g^T q g grows like |g|^2 |q|, so the residual is measured against that scale.
        const double scale = std::max(1.0, g.matrix().squaredNorm() * q.norm() / s);
        return (t / s - q / q.norm()).norm() <= tol * scale && locate(dom, Vec3(g.matrix() * dom.center())) == Location::Interior;
    }
    return preserves_domain(g.matrix(), dom, n_samples, tol);
}

inline std::vector<Axis> axes(const ProjTransform& g, const ConvexDomain& dom, double tol = 1e-8) {
    const DynClass c = classify(g, tol);
    require(c.family == Family::Hyperbolic || c.family == Family::QuasiHyperbolic, ErrorCode::WrongFamily,
            "axes are defined for hyperbolic and quasi-hyperbolic elements");
    require(preserves_domain(g, dom), ErrorCode::DomainNotPreserved, "transform does not preserve the domain");
    std::vector<Axis> out;
    if (c.family == Family::QuasiHyperbolic) {
        const auto& d = c.as<QuasiHyperbolicData>();
        out.push_back({d.p1, d.p2, Axis::Kind::Principal});
        return out;
    }
    const auto& d = c.as<HyperbolicData>();
    out.push_back({d.p_plus, d.p_minus, Axis::Kind::Principal});
    if (locate(dom, d.p_zero, 1e-8) == Location::Boundary) {
        out.push_back({d.p_plus, d.p_zero, Axis::Kind::Secondary});
        out.push_back({d.p_minus, d.p_zero, Axis::Kind::Secondary});
    }
    return out;
}

struct SectorRegion {
    ProjTransform generator;
    std::vector<Vec3> seed;  // lifted seed polygon
    int n = 0;
    Region hull;  // in the domain chart
};

inline SectorRegion sector(const ProjTransform& g, const ConvexDomain& dom, const Region& seed, int n) {
    require(preserves_domain(g, dom), ErrorCode::DomainNotPreserved, "transform does not preserve the domain");
    require(n >= 0, ErrorCode::DegenerateInput, "negative orbit truncation");
    SectorRegion s{g, {}, n, {}};
    for (const auto& v : seed.vertices) s.seed.push_back(dom.lift(seed.chart.lift(v)));
    std::vector<Vec2> pts;
    const Mat3 gi = g.matrix().inverse();
    for (const auto& v : s.seed) {
        Vec3 f = v, b = v;
        pts.push_back(dom.chart().project(dom.lift(v)));
        for (int k = 1; k <= n; ++k) {
            f = g.matrix() * f;
            b = gi * b;
            f /= f.norm();
            b /= b.norm();
            pts.push_back(dom.chart().project(dom.lift(f)));
            pts.push_back(dom.chart().project(dom.lift(b)));
        }
    }
    s.hull = Region::polygon(pts, dom.chart());
    return s;
}

// Pencil lambda z^2 + mu (y^2 - z (y + 2x)) preserved by the normal form
// [[1,1,0],[0,1,1],[0,0,1]], tangent to z = 0 at [1:0:0].
struct ParabolicPencil {
    Mat3 conjugator;  // g = conjugator * normal_form * conjugator^-1
    Mat3 normal_form;
    Mat3 z2;          // z^2, normal coordinates
    Mat3 f;           // y^2 - z(y + 2x), normal coordinates
    ProjPoint p_gamma;
    ProjLine d_gamma;

    Mat3 member_normal(double lambda, double mu) const { return lambda * z2 + mu * f; }
    // The same conic in the original coordinates.
    Mat3 member(double lambda, double mu) const {
        const Mat3 pi = conjugator.inverse();
        return pi.transpose() * member_normal(lambda, mu) * pi;
    }
};

inline ParabolicPencil parabolic_invariant_pencil(const ProjTransform& g, double tol = 1e-8) {
    const DynClass c = classify(g, tol);
    require(c.family == Family::Parabolic, ErrorCode::WrongFamily, "pencil needs a parabolic element");
    ParabolicPencil p;
    p.conjugator = c.conjugator;
    p.normal_form = c.normal_form;
    p.z2 = Mat3::Zero();
    p.z2(2, 2) = 1.0;
    p.f << 0, 0, -1, 0, 1, -0.5, -1, -0.5, 0;
    p.p_gamma = ProjPoint(Vec3(c.conjugator.col(0)));
    p.d_gamma = ProjLine(Vec3(c.conjugator.inverse().transpose().col(2)));
    return p;
}

// Orbit t -> gamma^t x0 in the chart z = 1 of the normal form
// [[a, a, 0], [0, a, 0], [0, 0, b]]: with r = a / b,
// X = r^t (X0 + t Y0), Y = r^t Y0.
struct QuasiOrbit {
    Mat3 conjugator;  // g = conjugator * normal_form * conjugator^-1
    Mat3 normal_form;
    double alpha, beta;
    std::vector<double> t;
    std::vector<Vec2> normal_points;
    std::vector<ProjPoint> points;  // the same points in the original coordinates

    // X / X0 - Y / Y0 - (Y / X0) ln(Y / Y0) / ln(alpha / beta), scaled by X0;
    // for Y0 = 0 the orbit is the line Y = 0 and the residual is |Y|.
    double residual(const Vec2& x0, const Vec2& p) const {
        if (x0.y() == 0.0) return std::abs(p.y());
        return std::abs(p.x() - p.y() * x0.x() / x0.y() - p.y() * std::log(p.y() / x0.y()) / std::log(alpha / beta));
    }
};

inline QuasiOrbit quasi_hyperbolic_orbit(const ProjTransform& g, const Vec2& x0, const std::vector<double>& ts,
                                         double tol = 1e-8) {
    const DynClass c = classify(g, tol);
    require(c.family == Family::QuasiHyperbolic, ErrorCode::WrongFamily, "orbit equation needs a quasi-hyperbolic element");
    const auto& d = c.as<QuasiHyperbolicData>();
    QuasiOrbit o;
    o.alpha = d.alpha;
    o.beta = d.beta;
    o.conjugator = c.conjugator;
    o.conjugator.col(0) /= d.alpha;
    o.normal_form << d.alpha, d.alpha, 0, 0, d.alpha, 0, 0, 0, d.beta;
    const double r = d.alpha / d.beta;
    for (double t : ts) {
        const double rt = std::pow(r, t);
        const Vec2 p(rt * (x0.x() + t * x0.y()), rt * x0.y());
        o.t.push_back(t);
        o.normal_points.push_back(p);
        o.points.emplace_back(Vec3(o.conjugator * Vec3(p.x(), p.y(), 1.0)));
    }
    return o;
}

// ---------------------------------------------------------------------------
// Common one-parameter groups

struct GeometricComparison {
    bool same = false;
    bool order_two_involved = false;  // best effort: an involution lies in many rotation groups
};

inline GeometricComparison same_geometric_characteristics(const ProjTransform& g, const ProjTransform& h,
                                                          double tol = 1e-7) {
    const DynClass cg = classify(g), ch = classify(h);
    GeometricComparison r;
    if (cg.family == Family::Identity || ch.family == Family::Identity) {
        r.same = true;
        return r;
    }
    if (cg.family != ch.family) return r;
    if (cg.family == Family::Elliptic) {
        const auto& eg = cg.as<EllipticData>();
        const auto& eh = ch.as<EllipticData>();
        const bool fixed = eg.fixed_point.approx_equal(eh.fixed_point, tol) &&
                           eg.invariant_line.approx_equal(eh.invariant_line, tol);
        if (eg.order_two || eh.order_two) {
            r.order_two_involved = true;
            r.same = fixed;
            return r;
        }
        if (!fixed) return r;
    }
    Mat3 lg = real_log(cg), lh = real_log(ch);
    lg /= lg.norm();
    lh /= lh.norm();
    r.same = std::min((lg - lh).norm(), (lg + lh).norm()) <= tol;
    return r;
}

}  // namespace hilbertine
