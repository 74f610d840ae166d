#include <gtest/gtest.h>

#include "support.hpp"

using namespace hilbertine;
using testing_support::Rng;

namespace {

Mat3 jordan(double a, double b) {
    Mat3 m;
    m << a, 1, 0, 0, a, 0, 0, 0, b;
    return m;
}

Mat3 parabolic_normal() {
    Mat3 m;
    m << 1, 1, 0, 0, 1, 1, 0, 0, 1;
    return m;
}

Mat3 rotation(double th) {
    Mat3 m = Mat3::Identity();
    m(1, 1) = m(2, 2) = std::cos(th);
    m(1, 2) = -std::sin(th);
    m(2, 1) = std::sin(th);
    return m;
}

// |g v - lambda v| / (|g| |v|) after fitting lambda; zero iff v is an eigenvector.
double eigen_residual(const Mat3& g, const ProjPoint& p) {
    const Vec3 v = p.coords(), gv = g * v;
    return (gv - gv.dot(v) * v).norm() / g.norm();
}

double line_residual(const Mat3& g, const ProjLine& l) {
    const Vec3 v = l.coords(), gv = g.inverse().transpose() * v;
    return (gv - gv.dot(v) * v).norm() / gv.norm();
}

bool in_hull(const std::vector<Vec2>& hull, const Vec2& p, double tol) {
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (cross2(hull[(i + 1) % hull.size()] - hull[i], p - hull[i]) < -tol) return false;
    return true;
}

}  // namespace

TEST(Classify, NormalFormExamples) {
    auto h = classify(Mat3(Vec3(2, 1, 0.5).asDiagonal()));
    ASSERT_EQ(h.family, Family::Hyperbolic);
    EXPECT_NEAR(h.as<HyperbolicData>().lambda_plus, 2.0, 1e-12);
    EXPECT_NEAR(h.as<HyperbolicData>().lambda_zero, 1.0, 1e-12);
    EXPECT_NEAR(h.as<HyperbolicData>().lambda_minus, 0.5, 1e-12);
    EXPECT_TRUE(h.as<HyperbolicData>().p_plus.approx_equal(ProjPoint(1, 0, 0), 1e-12));
    EXPECT_EQ(classify(Mat3(Mat3::Identity())).family, Family::Identity);
    EXPECT_EQ(classify(parabolic_normal()).family, Family::Parabolic);
    const double a = std::cbrt(2.0), b = 1.0 / (a * a);
    auto p = classify(Mat3(Vec3(a, a, b).asDiagonal()));
    ASSERT_EQ(p.family, Family::Planar);
    EXPECT_NEAR(p.as<PlanarData>().alpha, a, 1e-12);
    auto q = classify(jordan(a, b));
    ASSERT_EQ(q.family, Family::QuasiHyperbolic);
    EXPECT_NEAR(q.as<QuasiHyperbolicData>().alpha * q.as<QuasiHyperbolicData>().alpha * q.as<QuasiHyperbolicData>().beta,
                1.0, 1e-9);
    auto e = classify(rotation(0.7));
    ASSERT_EQ(e.family, Family::Elliptic);
    EXPECT_NEAR(e.as<EllipticData>().theta, 0.7, 1e-12);
    EXPECT_TRUE(e.as<EllipticData>().fixed_point.approx_equal(ProjPoint(1, 0, 0), 1e-12));
    auto half = classify(rotation(kPi));
    ASSERT_EQ(half.family, Family::Elliptic);
    EXPECT_TRUE(half.as<EllipticData>().order_two);
}

TEST(Classify, IncompatibleSpectra) {
    auto code = [](const Mat3& m) {
        try {
            classify(m);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::DegenerateInput;
    };
    EXPECT_EQ(code(Vec3(2, -1, -0.5).asDiagonal()), ErrorCode::NotConvexCompatible);
    EXPECT_EQ(code(Mat3(std::sqrt(0.5) * rotation(0.4) + Vec3(2 - std::sqrt(0.5), 0, 0).asDiagonal().toDenseMatrix())),
              ErrorCode::NotConvexCompatible);
    Mat3 t = Mat3::Identity();
    t(0, 2) = 1.0;
    EXPECT_EQ(code(t), ErrorCode::NotConvexCompatible);
    EXPECT_THROW(classify(Mat3(Vec3(2, 1, 0.5).asDiagonal())).as<ParabolicData>(), Error);
}

TEST(Classify, ConjugationEquivariance) {
    Rng r(21);
    for (int k = 0; k < 1000; ++k) {
        const Mat3 c = r.well_conditioned(20.0), ci = c.inverse();
        double s1, s3, s0;
        do {
            s1 = r.uniform(0.2, 1.5);
            s3 = -r.uniform(0.2, 1.5);
            s0 = -(s1 + s3);
        } while (std::min(s1 - s0, s0 - s3) < 0.2);
        const double l1 = std::exp(s1), l3 = std::exp(s3);
        double u = 0.0;
        while (std::abs(u) < 0.1) u = r.uniform(-1.0, 1.0);
        const double a = std::exp(u), th = r.uniform(0.1, 3.0);
        const std::array<std::pair<Family, Mat3>, 6> cases{{
            {Family::Hyperbolic, Vec3(l1, 1.0 / (l1 * l3), l3).asDiagonal()},
            {Family::Planar, Vec3(a, a, 1.0 / (a * a)).asDiagonal()},
            {Family::QuasiHyperbolic, jordan(a, 1.0 / (a * a))},
            {Family::Parabolic, parabolic_normal()},
            {Family::Elliptic, rotation(th)},
            {Family::Identity, Mat3::Identity()},
        }};
        for (const auto& [fam, nf] : cases) {
            const Mat3 g = c * nf * ci;
            const DynClass d = classify(g);
            ASSERT_EQ(d.family, fam) << "sample " << k << " expected " << to_string(fam);
            const Mat3 gn = unimodular(g);
            switch (fam) {
            case Family::Hyperbolic: {
                const auto& h = d.as<HyperbolicData>();
                EXPECT_TRUE(h.p_plus.approx_equal(ProjPoint(Vec3(c.col(0))), 1e-7));
                EXPECT_TRUE(h.p_minus.approx_equal(ProjPoint(Vec3(c.col(2))), 1e-7));
                EXPECT_NEAR(h.lambda_plus * h.lambda_zero * h.lambda_minus, 1.0, 1e-9);
                for (const auto* p : {&h.p_plus, &h.p_zero, &h.p_minus}) EXPECT_LE(eigen_residual(gn, *p), 1e-8);
                for (const auto* l : {&h.d_plus_minus, &h.d_plus_zero, &h.d_minus_zero})
                    EXPECT_LE(line_residual(gn, *l), 1e-8);
                break;
            }
            case Family::Planar: {
                const auto& p = d.as<PlanarData>();
                EXPECT_TRUE(p.p_gamma.approx_equal(ProjPoint(Vec3(c.col(2))), 1e-7));
                EXPECT_NEAR(p.alpha * p.alpha * p.beta, 1.0, 1e-9);
                EXPECT_LE(eigen_residual(gn, p.p_gamma), 1e-8);
                EXPECT_LE(line_residual(gn, p.d_gamma), 1e-8);
                break;
            }
            case Family::QuasiHyperbolic: {
                const auto& q = d.as<QuasiHyperbolicData>();
                EXPECT_TRUE(q.p2.approx_equal(ProjPoint(Vec3(c.col(0))), 1e-7));
                EXPECT_TRUE(q.p1.approx_equal(ProjPoint(Vec3(c.col(2))), 1e-7));
                EXPECT_LE(eigen_residual(gn, q.p1), 1e-8);
                EXPECT_LE(eigen_residual(gn, q.p2), 1e-8);
                EXPECT_LE(line_residual(gn, q.d_gamma), 1e-8);
                break;
            }
            case Family::Parabolic: {
                const auto& p = d.as<ParabolicData>();
                EXPECT_TRUE(p.p_gamma.approx_equal(ProjPoint(Vec3(c.col(0))), 1e-7));
                EXPECT_LE(eigen_residual(gn, p.p_gamma), 1e-8);
                EXPECT_LE(line_residual(gn, p.d_gamma), 1e-8);
                break;
            }
            case Family::Elliptic: {
                const auto& e = d.as<EllipticData>();
                EXPECT_NEAR(e.theta, th, 1e-7);
                EXPECT_TRUE(e.fixed_point.approx_equal(ProjPoint(Vec3(c.col(0))), 1e-7));
                EXPECT_LE(eigen_residual(gn, e.fixed_point), 1e-8);
                EXPECT_LE(line_residual(gn, e.invariant_line), 1e-8);
                break;
            }
            case Family::Identity: break;
            }
            EXPECT_LT((d.conjugator * d.normal_form * d.conjugator.inverse() - gn).norm(), 1e-8 * gn.norm());
        }
    }
}

TEST(Classify, PowersKeepTheirFamily) {
    Rng r(22);
    for (int k = 0; k < 100; ++k) {
        const Mat3 c = r.well_conditioned(10.0), ci = c.inverse();
        const double th = r.uniform(0.1, 3.0);
        for (const Mat3& nf : {Mat3(Vec3(3, 1, 1.0 / 3).asDiagonal()), parabolic_normal(), jordan(1.5, 1.0 / 2.25)}) {
            const Mat3 g = c * nf * ci;
            const Family f = classify(g).family;
            EXPECT_EQ(classify(Mat3(g * g)).family, f);
            EXPECT_EQ(classify(Mat3(g * g * g)).family, f);
        }
        const Mat3 e = c * rotation(th) * ci;
        for (int p : {2, 3}) {
            Mat3 ep = Mat3::Identity();
            for (int i = 0; i < p; ++i) ep = ep * e;
            double want = std::fmod(p * th, 2.0 * kPi);
            if (want > kPi) want = 2.0 * kPi - want;
            if (std::abs(want) < 1e-3 || std::abs(want - kPi) < 1e-3) continue;
            EXPECT_NEAR(classify(ep).as<EllipticData>().theta, want, 1e-6);
        }
    }
}

TEST(Axes, TriangleAndDisk) {
    const ProjTransform h(Vec3(2, 1, 0.5).asDiagonal());
    const auto ax = axes(h, models::simplex());
    ASSERT_EQ(ax.size(), 3u);
    EXPECT_EQ(ax[0].kind, Axis::Kind::Principal);
    EXPECT_EQ(ax[1].kind, Axis::Kind::Secondary);
    EXPECT_TRUE(ax[0].a.approx_equal(ProjPoint(1, 0, 0), 1e-12));
    EXPECT_TRUE(ax[0].b.approx_equal(ProjPoint(0, 0, 1), 1e-12));

    const auto boost = axes(ProjTransform(models::disk_boost(0.8)), models::unit_disk());
    ASSERT_EQ(boost.size(), 1u);
    const bool fwd = boost[0].a.approx_equal(ProjPoint(1, 0, 1), 1e-9);
    EXPECT_TRUE(boost[0].a.approx_equal(ProjPoint(fwd ? 1 : -1, 0, 1), 1e-9));
    EXPECT_TRUE(boost[0].b.approx_equal(ProjPoint(fwd ? -1 : 1, 0, 1), 1e-9));
    try {
        axes(ProjTransform(models::disk_rotation(0.5)), models::unit_disk());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::WrongFamily);
    }
    try {
        axes(h, models::unit_disk());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DomainNotPreserved);
    }
}

TEST(PreservesDomain, Examples) {
    const ConvexDomain disk = models::unit_disk();
    EXPECT_TRUE(preserves_domain(ProjTransform(models::disk_boost(1.3)), disk));
    EXPECT_TRUE(preserves_domain(ProjTransform(models::disk_parabolic(0.9)), disk));
    EXPECT_FALSE(preserves_domain(ProjTransform(Vec3(2, 1, 0.5).asDiagonal()), disk));
    EXPECT_TRUE(preserves_domain(ProjTransform(Vec3(2, 1, 0.5).asDiagonal()), models::simplex()));
}

TEST(Pencil, StandardAndConjugated) {
    const auto p = parabolic_invariant_pencil(ProjTransform(parabolic_normal()));
    const Mat3 g = p.normal_form;
    const Mat3 q = p.member_normal(1.0, 1.0);
    EXPECT_LE((g.transpose() * q * g - q).norm(), 1e-9);
    const Mat3 z = p.member_normal(1.0, 0.0);
    EXPECT_EQ(Eigen::FullPivLU<Mat3>(z).rank(), 1);

    Rng r(23);
    for (int k = 0; k < 50; ++k) {
        const Mat3 c = r.well_conditioned(10.0);
        const ProjTransform h(c * parabolic_normal() * c.inverse());
        const auto pk = parabolic_invariant_pencil(h);
        const Mat3 m = h.matrix();
        for (double lam : {0.5, 1.0, 3.0}) {
            const Mat3 qk = pk.member(lam, 1.0);
            EXPECT_LE((m.transpose() * qk * m - qk).norm(), 1e-9 * qk.norm());
            // Tangent to D_gamma at p_gamma: p on the conic, its polar line is D_gamma.
            const Vec3 pv = pk.p_gamma.coords();
            EXPECT_LE(std::abs(pv.dot(qk * pv)), 1e-9 * qk.norm());
            EXPECT_TRUE(ProjLine(Vec3(qk * pv)).approx_equal(pk.d_gamma, 1e-8));
        }
        EXPECT_TRUE(pk.p_gamma.approx_equal(ProjPoint(Vec3(c.col(0))), 1e-7));
    }
    EXPECT_THROW(parabolic_invariant_pencil(ProjTransform(rotation(0.3))), Error);
}

TEST(OneParam, Powers) {
    Rng r(24);
    const Mat3 c = r.well_conditioned(10.0);
    for (const Mat3& nf : {Mat3(Vec3(3, 1, 1.0 / 3).asDiagonal()), parabolic_normal(), jordan(1.5, 1.0 / 2.25),
                           Mat3(Vec3(1.5, 1.5, 1.0 / 2.25).asDiagonal())}) {
        const ProjTransform g(c * nf * c.inverse());
        EXPECT_LT(one_param_power(g, 0.0).distance(ProjTransform()), 1e-10);
        EXPECT_LT(one_param_power(g, 1.0).distance(g), 1e-10 * g.matrix().norm());
        EXPECT_LT(one_param_power(g, 2.0).distance(g * g), 1e-10 * (g * g).matrix().norm());
        const ProjTransform s = one_param_power(g, 0.3), t = one_param_power(g, 1.45);
        const ProjTransform st = one_param_power(g, 1.75);
        EXPECT_LT((s * t).distance(st), 1e-9 * st.matrix().norm());
    }
    const ProjTransform par(c * parabolic_normal() * c.inverse());
    const ProjTransform half = one_param_power(par, 0.5);
    EXPECT_LT((half * half).distance(par), 1e-10 * par.matrix().norm());
    try {
        one_param_power(ProjTransform(rotation(0.4)), 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoRealLogarithm);
    }
    EXPECT_LT(one_param_power(ProjTransform(rotation(0.4)), 3.0).distance(ProjTransform(rotation(1.2))), 1e-10);
}

TEST(QuasiOrbit, ClosedFormEquation) {
    const double a = std::cbrt(2.0), b = 1.0 / (a * a);
    Rng r(25);
    const Mat3 c = r.well_conditioned(10.0);
    const ProjTransform g(c * jordan(a, b) * c.inverse());
    const std::vector<double> ts{-2, -1, 0, 1, 2};
    const QuasiOrbit o = quasi_hyperbolic_orbit(g, {1.0, 1.0}, ts);
    for (const auto& p : o.normal_points) EXPECT_LE(o.residual({1.0, 1.0}, p), 1e-9);
    EXPECT_LT((o.normal_points[2] - Vec2(1.0, 1.0)).norm(), 1e-15);
    // The orbit points are the actual images gamma^n x0.
    const Vec3 x0 = o.conjugator * Vec3(1.0, 1.0, 1.0);
    EXPECT_TRUE(o.points[3].approx_equal(ProjPoint(Vec3(g.matrix() * x0)), 1e-9));
    EXPECT_TRUE(o.points[4].approx_equal(ProjPoint(Vec3(g.matrix() * g.matrix() * x0)), 1e-9));
    const QuasiOrbit line = quasi_hyperbolic_orbit(g, {0.7, 0.0}, ts);
    for (const auto& p : line.normal_points) EXPECT_EQ(p.y(), 0.0);
    EXPECT_THROW(quasi_hyperbolic_orbit(ProjTransform(parabolic_normal()), {1, 1}, ts), Error);
}

TEST(Sector, ParabolicHyperbolicAndTrivial) {
    const ConvexDomain disk = models::unit_disk();
    const Region seed = Region::polygon({{-0.1, -0.1}, {0.1, -0.1}, {0.0, 0.1}});
    const ProjTransform par(models::disk_parabolic(1.0));
    const SectorRegion s = sector(par, disk, seed, 50);
    const Vec2 p = disk.chart().project(Vec3(1, 0, -1));
    // Where the hull comes closest to the boundary: vertices within twice the minimal gap.
    std::vector<std::pair<double, Vec2>> gaps;
    for (const auto& v : s.hull.vertices) {
        const Vec3 x = disk.chart().lift(v);
        gaps.emplace_back(1.0 - (x / x.z()).head<2>().norm(), v);
    }
    double min_gap = 1.0;
    for (const auto& [g, v] : gaps) min_gap = std::min(min_gap, g);
    EXPECT_LT(min_gap, 1e-5);
    for (const auto& [g, v] : gaps) {
        if (g <= 2.0 * min_gap) {
            EXPECT_LT((v - p).norm(), 0.05);
        }
    }
    const ProjTransform hyp(models::disk_boost(0.5));
    const SectorRegion t = sector(hyp, disk, seed, 10);
    for (int n : {-10, 10}) {
        const Vec3 x = one_param_power(hyp, n).matrix() * Vec3(0, 0, 1);
        EXPECT_TRUE(in_hull(t.hull.vertices, disk.chart().project(x), 1e-12));
    }
    const SectorRegion z = sector(hyp, disk, seed, 0);
    EXPECT_NEAR(z.hull.chart_area(), std::abs(signed_area(seed.vertices)), 1e-12);
}

TEST(SameCharacteristics, Examples) {
    Rng r(26);
    const Mat3 c = r.well_conditioned(10.0);
    const ProjTransform g(c * Mat3(Vec3(3, 1.2, 1.0 / 3.6).asDiagonal()) * c.inverse());
    EXPECT_TRUE(same_geometric_characteristics(g, g * g * g).same);
    EXPECT_TRUE(same_geometric_characteristics(g, g.inverse()).same);
    EXPECT_TRUE(same_geometric_characteristics(ProjTransform(models::disk_parabolic(1.0)),
                                               ProjTransform(models::disk_parabolic(2.5)))
                    .same);
    const ProjTransform b1(models::disk_boost(0.8));
    const ProjTransform b2(models::disk_rotation(0.5) * models::disk_boost(0.8) * models::disk_rotation(-0.5));
    EXPECT_FALSE(same_geometric_characteristics(b1, b2).same);
    // Same eigenpoints but eigenvalue ratios not in a common one-parameter group.
    EXPECT_FALSE(same_geometric_characteristics(ProjTransform(Vec3(2, 1, 0.5).asDiagonal()),
                                                ProjTransform(Vec3(3, 1.0 / 1.5, 0.5).asDiagonal()))
                     .same);
    const auto inv = same_geometric_characteristics(ProjTransform(rotation(kPi)), ProjTransform(rotation(kPi)));
    EXPECT_TRUE(inv.order_two_involved);
}
