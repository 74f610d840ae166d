// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "support.hpp"

using namespace hilbertine;
using testing_support::Rng;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double eigen_residual(const Mat3& g, const ProjPoint& p) {
    const Vec3 v = p.coords(), gv = g * v;
    return (gv - gv.dot(v) * v).norm() / g.norm();
}

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

// ---------------------------------------------------------------------------

Outcome ideal_triangle_minimum() {
    const ConvexDomain simplex = models::simplex();
    IdealTriangleOptions opt;
    opt.volume.convention = Convention::HalfLogCrossRatio;
    const double xs[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> areas;
    for (double x : xs) {
        const auto s = models::simplex_ideal_triangle(x);
        areas.push_back(ideal_triangle_area(simplex, s[0], s[1], s[2], opt).value);
    }
    const auto best = std::min_element(areas.begin(), areas.end()) - areas.begin();
    const double target = std::pow(kPi, 3) / 24.0, rel = std::abs(areas[2] / target - 1.0);
    Outcome o;
    o.pass = best == 2 && rel <= 0.01;
    std::ostringstream s;
    s << "areas";
    for (double a : areas) s << ' ' << fmt("%.6f", a);
    s << ", argmin x=" << xs[best] << ", |A(1)/(pi^3/24) - 1|=" << fmt("%.2e", rel);
    o.detail = s.str();
    return o;
}

Outcome classification() {
    Rng r(1001);
    std::vector<std::pair<Family, Mat3>> cases;
    for (int k = 0; k < 200; ++k) {
        double s1, s3, s0;
        do {
            s1 = r.uniform(0.2, 1.5);
            s3 = -r.uniform(0.2, 1.5);
            s0 = -(s1 + s3);
        } while (std::min(s1 - s0, s0 - s3) < 0.2);
        double u = 0.0;
        while (std::abs(u) < 0.1) u = r.uniform(-1.0, 1.0);
        const double a = std::exp(u), th = r.uniform(0.1, 3.0);
        const Mat3 c = r.well_conditioned(20.0), ci = c.inverse();
        const Mat3 forms[6] = {Vec3(std::exp(s1), std::exp(s0), std::exp(s3)).asDiagonal(), Vec3(a, a, 1.0 / (a * a)).asDiagonal(),
                               jordan(a, 1.0 / (a * a)), parabolic_normal(), rotation(th), Mat3::Identity()};
        const Family fams[6] = {Family::Hyperbolic, Family::Planar, Family::QuasiHyperbolic,
                                Family::Parabolic, Family::Elliptic, Family::Identity};
        for (int i = 0; i < 6; ++i) cases.emplace_back(fams[i], c * forms[i] * ci);
    }
    const auto t0 = Clock::now();
    std::vector<DynClass> out;
    out.reserve(cases.size());
    for (const auto& [f, g] : cases) out.push_back(classify(g, 1e-8));
    const double dt = seconds_since(t0);
    int errors = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const DynClass& d = out[i];
        if (d.family != cases[i].first) {
            ++errors;
            continue;
        }
        const Mat3 g = unimodular(cases[i].second);
        std::vector<ProjPoint> pts;
        switch (d.family) {
        case Family::Hyperbolic: {
            const auto& h = d.as<HyperbolicData>();
            pts = {h.p_plus, h.p_zero, h.p_minus};
            break;
        }
        case Family::Planar: pts = {d.as<PlanarData>().p_gamma}; break;
        case Family::QuasiHyperbolic: pts = {d.as<QuasiHyperbolicData>().p1, d.as<QuasiHyperbolicData>().p2}; break;
        case Family::Parabolic: pts = {d.as<ParabolicData>().p_gamma}; break;
        case Family::Elliptic: pts = {d.as<EllipticData>().fixed_point}; break;
        case Family::Identity: break;
        }
        for (const auto& p : pts) worst = std::max(worst, eigen_residual(g, p));
    }
    Outcome o;
    o.pass = errors == 0 && worst <= 1e-8 && dt <= 5.0;
    o.detail = std::to_string(cases.size()) + " elements, " + std::to_string(errors) + " family errors, max residual " +
               fmt("%.2e", worst) + ", classify time " + fmt("%.3f", dt) + " s";
    return o;
}

Outcome comparison() {
    Rng r(1003);
    int violations = 0, pairs = 0;
    double worst_d = -1e300;
    for (int k = 0; k < 200; ++k) {
        // Outer domain: random polygon or ellipse; inner: hull of points inside it.
        ConvexDomain outer = models::unit_disk();
        std::vector<Vec2> inner_pts;
        if (k % 2 == 0) {
            const auto poly = r.polygon(3 + k % 7);
            outer = testing_support::chart_polygon(poly);
            for (int i = 0; i < 6; ++i) inner_pts.push_back(r.in_polygon(poly, 0.98));
        } else {
            const Mat2 a = (Mat2() << r.uniform(0.5, 2), 0.3 * r.uniform(-1, 1), 0, r.uniform(0.5, 2)).finished();
            const Mat2 spd = a.transpose() * a;
            const Vec2 c(r.uniform(-0.3, 0.3), r.uniform(-0.3, 0.3));
            outer = testing_support::chart_ellipse(spd, c);
            const Eigen::SelfAdjointEigenSolver<Mat2> es(spd);
            const Mat2 root_inv = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                  es.eigenvectors().transpose();
            for (int i = 0; i < 6; ++i) inner_pts.push_back(c + root_inv * r.in_disk(0.98));
        }
        const auto hull = convex_hull(inner_pts);
        if (hull.size() < 3 || std::abs(signed_area(hull)) < 1e-3) {
            --k;
            continue;
        }
        const ConvexDomain inner = testing_support::chart_polygon(hull);
        for (int j = 0; j < 5; ++j, ++pairs) {
            const Vec2 x = r.in_polygon(hull, 0.95), y = r.in_polygon(hull, 0.95);
            const double d1 = hilbert_distance(inner, testing_support::pt(x), testing_support::pt(y)).value();
            const double d2 = hilbert_distance(outer, testing_support::pt(x), testing_support::pt(y)).value();
            worst_d = std::max(worst_d, d2 - d1);
            bool ok = d2 <= d1 + 1e-9;
            const Vec2 v = (y - x).norm() > 0 ? Vec2(y - x) : Vec2(1, 0);
            ok = ok && finsler_norm(outer, x, v) <= finsler_norm(inner, x, v) * (1 + 1e-12);
            ok = ok && unit_ball_area(outer, x) >= unit_ball_area(inner, x) * (1 - 1e-12);
            if (j == 0) {
                Vec2 c = Vec2::Zero();
                for (const auto& h : hull) c += h;
                c /= static_cast<double>(hull.size());
                const Region a = Region::polygon({c + 0.5 * (x - c), c + 0.5 * (y - c), c + 0.5 * (hull[0] - c)});
                if (a.chart_area() > 1e-8) ok = ok && region_volume(outer, a) <= region_volume(inner, a) * (1 + 1e-5);
            }
            violations += !ok;
        }
    }
    Outcome o;
    o.pass = violations == 0;
    o.detail = std::to_string(pairs) + " nested pairs, " + std::to_string(violations) +
               " violations, max d_outer - d_inner " + fmt("%.2e", worst_d);
    return o;
}

// Analytic lower bound for the log-cusp pic: integral over x in [eps x0, x0] of
// ln((b - ln x) / (a - ln x)) / (4 x), by the midpoint rule in s = -ln x.
double log_cusp_bound(double eps, double x0, double a, double b) {
    const double s0 = -std::log(x0), s1 = -std::log(eps * x0);
    const int n = 200000;
    const double h = (s1 - s0) / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = s0 + (i + 0.5) * h;
        acc += std::log((b + s) / (a + s));
    }
    return acc * h / 4.0;
}

Outcome cusp_dichotomy() {
    std::ostringstream s;
    Outcome o;
    const auto sched = decade_schedule(8);

    const Pic par{Region{AffineChart{}, {Vec2(1, 0), Vec2(0.98, -0.002), Vec2(0.98, 0.002)}}, 0};
    const VolumeProfile pp = pic_volume_profile(models::unit_disk(), par, sched);
    std::size_t reach = pp.epsilons.size();
    for (std::size_t k = 2; k <= pp.epsilons.size(); ++k) {
        VolumeProfile head;
        head.epsilons.assign(pp.epsilons.begin(), pp.epsilons.begin() + k);
        head.partial.assign(pp.partial.begin(), pp.partial.begin() + k);
        if (classify_profile(head, 1e-3) == Verdict::Converged) {
            reach = k - 1;
            break;
        }
    }
    const bool par_ok = reach < pp.epsilons.size() && pp.epsilons[reach] >= 1e-6 * (1 - 1e-12);
    s << "parabolic " << to_string(pp.verdict)
      << (reach < pp.epsilons.size() ? " at eps=" + fmt("%.0e", pp.epsilons[reach]) : std::string()) << "; ";

    const Pic corner{Region{AffineChart{}, {Vec2(0, 0), Vec2(1, 0.5), Vec2(0.5, 1)}}, 0};
    const VolumeProfile cp = pic_volume_profile(models::simplex(), corner, sched);
    const auto inc = cp.increments();
    double spread = 0.0;
    for (double d : inc) spread = std::max(spread, std::abs(d / inc.front() - 1.0));
    const bool corner_ok = cp.verdict == Verdict::Diverging && spread <= 0.01;
    s << "corner " << to_string(cp.verdict) << ", annulus spread " << fmt("%.1e", spread) << "; ";

    const Pic cusp{Region{AffineChart{}, {Vec2(0, 0), Vec2(0.5, 0.25), Vec2(0.5, 0.75)}}, 0};
    const VolumeProfile lp = pic_volume_profile(models::log_cusp_domain(), cusp, sched);
    bool within = true, above = true;
    s << "log-cusp " << to_string(lp.verdict) << ", mu/bound";
    for (std::size_t k = 0; k < lp.partial.size(); ++k) {
        const double ratio = lp.partial[k] / log_cusp_bound(lp.epsilons[k], 0.5, 0.5, 1.5);
        within = within && std::abs(ratio - 1.0) <= 0.1;
        above = above && ratio >= 1.0;
        s << ' ' << fmt("%.3f", ratio);
    }
    s << " (above bound: " << (above ? "yes" : "no") << ", within 10%: " << (within ? "yes" : "no") << ")";
    const bool cusp_ok = lp.verdict == Verdict::Diverging && within;

    o.pass = par_ok && corner_ok && cusp_ok;
    o.detail = s.str();
    return o;
}

Outcome vinberg_closed_form() {
    Rng r(1005);
    const ConvexCone o = ConvexCone::simplicial(Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ());
    double e_closed = 0, e_hom = 0, e_aut = 0, e_grad = 0;
    for (int k = 0; k < 1000; ++k) {
        const Vec3 m(r.uniform(0.05, 3), r.uniform(0.05, 3), r.uniform(0.05, 3));
        const double p = characteristic_function(o, m), ref = 1.0 / m.prod();
        e_closed = std::max(e_closed, std::abs(p / ref - 1.0));
        const double lam = r.uniform(0.1, 10.0);
        e_hom = std::max(e_hom, std::abs(characteristic_function(o, Vec3(lam * m)) * std::pow(lam, 3) / p - 1.0));
        Vec3 d(std::exp(r.uniform(-1, 1)), std::exp(r.uniform(-1, 1)), 1.0);
        d.z() = 1.0 / (d.x() * d.y());
        Mat3 perm = Mat3::Zero();
        std::array<int, 3> idx{0, 1, 2};
        std::shuffle(idx.begin(), idx.end(), r.engine());
        for (int i = 0; i < 3; ++i) perm(i, idx[i]) = 1.0;
        const Vec3 gm = perm * d.asDiagonal() * m;
        e_aut = std::max(e_aut, std::abs(characteristic_function(o, gm) / p - 1.0));
        const Vec3 g = char_gradient(o, m);
        const double h = 1e-5;
        for (int i = 0; i < 3; ++i) {
            const Vec3 e = Vec3::Unit(i) * h * m[i];
            const double fd = (characteristic_function(o, Vec3(m + e)) - characteristic_function(o, Vec3(m - e))) / (2 * e[i]);
            e_grad = std::max(e_grad, std::abs(-fd - g[i]) / g.norm());
        }
    }
    Outcome out;
    out.pass = e_closed <= 1e-9 && e_hom <= 1e-6 && e_aut <= 1e-6 && e_grad <= 1e-5;
    out.detail = "closed form " + fmt("%.1e", e_closed) + ", homogeneity " + fmt("%.1e", e_hom) + ", automorphisms " +
                 fmt("%.1e", e_aut) + ", gradient " + fmt("%.1e", e_grad);
    return out;
}

Outcome duality() {
    Rng r(1006);
    double worst_h = 0, worst_theta = 0;
    auto check = [&](const ConvexDomain& dom, const std::vector<Vec2>& interior) {
        worst_h = std::max(worst_h, hausdorff_distance(dom, dual_domain(dual_domain(dom))));
        const Mat3 g = r.well_conditioned(10.0);
        const ConvexDomain gd = dom.transformed(g);
        for (const auto& x : interior) {
            const ProjPoint p = testing_support::pt(x);
            const ProjPoint lhs = dual_map_theta(gd, ProjPoint(Vec3(g * p.coords())));
            const ProjPoint rhs(Vec3(g.inverse().transpose() * dual_map_theta(dom, p).coords()));
            worst_theta = std::max(worst_theta, lhs.separation(rhs));
        }
    };
    for (int k = 0; k < 50; ++k) {
        const auto poly = k % 2 ? r.polygon(3 + k % 6) : r.triangle();
        check(testing_support::chart_polygon(poly), {r.in_polygon(poly, 0.9), r.in_polygon(poly, 0.9)});
    }
    for (int k = 0; k < 50; ++k) {
        const Mat2 a = (Mat2() << r.uniform(0.5, 2), 0.3 * r.uniform(-1, 1), 0, r.uniform(0.5, 2)).finished();
        const Mat2 spd = a.transpose() * a;
        const Vec2 c(r.uniform(-0.5, 0.5), r.uniform(-0.5, 0.5));
        const Eigen::SelfAdjointEigenSolver<Mat2> es(spd);
        const Mat2 root_inv =
            es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
        check(testing_support::chart_ellipse(spd, c), {Vec2(c + root_inv * r.in_disk(0.8))});
    }
    Outcome o;
    o.pass = worst_h <= 1e-6 && worst_theta <= 1e-6;
    o.detail = "max Hausdorff(Omega**, Omega) " + fmt("%.1e", worst_h) + ", max theta equivariance defect " +
               fmt("%.1e", worst_theta);
    return o;
}

// Chart distance from v to the line with covector l.
double line_distance(const Vec3& l, const Vec2& v) { return std::abs(l.x() * v.x() + l.y() * v.y() + l.z()) / l.head<2>().norm(); }

Outcome dirichlet_lee() {
    const ConvexDomain disk = models::unit_disk();
    const ConvexCone cone = ConvexCone::lorentz(disk.conic().matrix(), Vec3(0, 0, 1));
    const ProjPoint o(0.1, 0.05, 1.0);
    const Vec3 x0 = sigma_lift(cone, o);
    std::ostringstream s;
    bool pass = true;
    const std::pair<const char*, Mat3> groups[] = {{"hyperbolic", models::disk_boost(0.8)},
                                                   {"parabolic", models::disk_parabolic(1.0)}};
    for (const auto& [name, m] : groups) {
        const ProjTransform g(m);
        std::vector<ProjTransform> els;
        for (int n = 1; n <= 10; ++n) {
            els.push_back(one_param_power(g, n));
            els.push_back(one_param_power(g, -n));
        }
        const auto dl = dirichlet_lee_domain(cone, els, x0);
        std::vector<ProjPoint> orbit;
        for (const auto& e : els) orbit.push_back(e(o));
        Rng r(1007);
        int agree = 0, bad = 0, overlaps = 0;
        const int n_samples = 10000;
        for (int k = 0; k < n_samples; ++k) {
            const Vec2 v = r.in_disk(0.999);
            const ProjPoint x = testing_support::pt(v);
            // Orbit argmin: x is in the domain iff x0 is a nearest orbit point.
            const double d0 = hilbert_distance(disk, x, o).value();
            bool oracle = true;
            for (const auto& y : orbit) oracle = oracle && d0 <= hilbert_distance(disk, x, y).value();
            const bool fast = dl.contains(Vec3(v.x(), v.y(), 1.0));
            if (fast == oracle) {
                ++agree;
            } else {
                double near = 1e300;
                for (const auto& b : dl.bisectors) near = std::min(near, line_distance(b, v));
                bad += near > 1e-6;
            }
            if (dl.contains(Vec3(v.x(), v.y(), 1.0), 1e-9))
                for (const auto& e : els) {
                    const Vec3 w = e.matrix() * Vec3(v.x(), v.y(), 1.0);
                    overlaps += dl.contains(w, 1e-9);
                }
        }
        const double rate = static_cast<double>(agree) / n_samples;
        pass = pass && rate >= 0.999 && bad == 0 && overlaps == 0;
        s << name << ": agreement " << fmt("%.4f", rate) << ", off-bisector disagreements " << bad << ", overlaps "
          << overlaps << "; ";
    }
    Outcome out;
    out.pass = pass;
    out.detail = s.str();
    out.detail.resize(out.detail.size() - 2);
    return out;
}

Outcome orbit_and_pencil() {
    Rng r(1008);
    double worst_orbit = 0, worst_pencil = 0;
    int samples = 0;
    for (int k = 0; k < 50; ++k) {
        const double a = std::exp(r.uniform(0.1, 0.8) * (k % 2 ? 1 : -1));
        const Mat3 c = r.well_conditioned(10.0);
        const ProjTransform g(c * jordan(a, 1.0 / (a * a)) * c.inverse());
        std::vector<double> ts;
        for (int i = 0; i < 20; ++i) ts.push_back(r.uniform(-3, 3));
        const Vec2 x0(r.uniform(-2, 2), r.uniform(0.2, 2));
        const QuasiOrbit q = quasi_hyperbolic_orbit(g, x0, ts);
        for (const auto& p : q.normal_points) {
            worst_orbit = std::max(worst_orbit, q.residual(x0, p) / std::max(1.0, p.norm()));
            ++samples;
        }
        const ProjTransform h(c * parabolic_normal() * c.inverse());
        const auto pen = parabolic_invariant_pencil(h);
        const Mat3 m = h.matrix();
        for (double lam : {0.25, 1.0, 4.0}) {
            const Mat3 qk = pen.member(lam, 1.0);
            worst_pencil = std::max(worst_pencil, (m.transpose() * qk * m - qk).norm() / qk.norm());
        }
    }
    Outcome o;
    o.pass = worst_orbit <= 1e-9 && worst_pencil <= 1e-9;
    o.detail = std::to_string(samples) + " orbit samples, max orbit residual " + fmt("%.1e", worst_orbit) +
               ", max pencil residual " + fmt("%.1e", worst_pencil);
    return o;
}

Outcome finite_volume() {
    const GroupPresentation cusp = models::punctured_torus_group(3.0);
    const ProjTransform hol = models::commutator(cusp.generators[0], cusp.generators[1]);
    const auto fin = finite_volume_criterion(*cusp.domain, {hol});
    const GroupPresentation open = models::punctured_torus_group(3.1);
    const ProjTransform hyp = models::commutator(open.generators[0], open.generators[1]);
    const auto inf = finite_volume_criterion(*open.domain, {hyp});
    Outcome o;
    o.pass = fin.kind == FiniteVolumeVerdict::Kind::FiniteVolume && inf.kind == FiniteVolumeVerdict::Kind::InfiniteVolume &&
             inf.witness == 0 && inf.witness_family == Family::Hyperbolic;
    o.detail = "cusp holonomy: " + to_string(fin.kind) + "; hyperbolic replacement: " + to_string(inf.kind) +
               " (witness " + std::to_string(inf.witness) + ", " +
               (inf.witness_family ? to_string(*inf.witness_family) : std::string("none")) + ")";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget;  // seconds, 0 for none
        std::function<Outcome()> run;
    };
    const Criterion all[] = {
        {"ideal-triangle minimum", 60, ideal_triangle_minimum},
        {"classification", 0, classification},
        {"comparison principle", 10, comparison},
        {"cusp dichotomy", 120, cusp_dichotomy},
        {"vinberg closed form", 0, vinberg_closed_form},
        {"duality round-trip", 0, duality},
        {"dirichlet-lee oracle", 0, dirichlet_lee},
        {"orbit and pencil residuals", 0, orbit_and_pencil},
        {"finite-volume criterion", 0, finite_volume},
    };
    int failures = 0, index = 0;
    for (const auto& c : all) {
        ++index;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double dt = seconds_since(t0);
        if (c.budget > 0 && dt > c.budget) {
            o.pass = false;
            o.detail += " (over time budget)";
        }
        failures += !o.pass;
        std::printf("%s %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), dt);
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", index - failures, index);
    return failures ? 1 : 0;
}
