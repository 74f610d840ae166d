#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hilbertine/dynamics.hpp"

namespace hilbertine {

struct GroupPresentation {
    std::vector<ProjTransform> generators;
    std::vector<std::string> labels;
    std::optional<ConvexDomain> domain;  // common invariant domain, if known

    std::string letter(int k) const {
        const std::size_t g = static_cast<std::size_t>(k / 2);
        const std::string base = g < labels.size() ? labels[g] : "g" + std::to_string(g + 1);
        return k % 2 ? base + "^-1" : base;
    }
};

// Letter 2i is generator i, letter 2i+1 its inverse.
struct Word {
    std::vector<int> letters;
    ProjTransform element;
};

inline std::string word_label(const GroupPresentation& g, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) s += (i ? " " : "") + g.letter(w.letters[i]);
    return s;
}

// Throws DomainNotPreserved if a generator moves the common domain.
inline void check_presentation(const GroupPresentation& g) {
    if (!g.domain) return;
    for (const auto& h : g.generators)
        require(preserves_domain(h, *g.domain), ErrorCode::DomainNotPreserved, "generator does not preserve the domain");
}

// Reduced words of length 1..L, breadth first and lexicographic within a length.
// Words equal (within dedup_tol on det-1 matrices) to the identity or to an
// earlier word are dropped and not extended.
inline std::vector<Word> enumerate_words(const GroupPresentation& g, int max_len, double dedup_tol = 1e-9,
                                         std::size_t* collisions = nullptr) {
    std::vector<Word> out;
    if (max_len < 1 || g.generators.empty()) return out;
    const int n_letters = 2 * static_cast<int>(g.generators.size());
    std::vector<ProjTransform> letters;
    for (const auto& h : g.generators) {
        letters.push_back(h);
        letters.push_back(h.inverse());
    }
    const double cell = 1e-6;
    std::map<std::pair<long long, long long>, std::vector<std::size_t>> buckets;
    auto key = [&](const Mat3& m) {
        return std::make_pair(static_cast<long long>(std::floor(m(0, 0) / cell)),
                              static_cast<long long>(std::floor(m(0, 1) / cell)));
    };
    const ProjTransform identity;
    std::size_t dropped = 0;
    auto seen = [&](const ProjTransform& t) {
        if (t.distance(identity) <= dedup_tol * std::max(1.0, t.matrix().norm())) return true;
        const auto k = key(t.matrix());
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = buckets.find({k.first + dx, k.second + dy});
                if (it == buckets.end()) continue;
                for (std::size_t id : it->second)
                    if (out[id].element.distance(t) <= dedup_tol * std::max(1.0, t.matrix().norm())) return true;
            }
        return false;
    };
    auto add = [&](Word w) {
        if (seen(w.element)) {
            ++dropped;
            return false;
        }
        buckets[key(w.element.matrix())].push_back(out.size());
        out.push_back(std::move(w));
        return true;
    };
    std::vector<std::size_t> frontier;
    for (int a = 0; a < n_letters; ++a)
        if (add({{a}, letters[a]})) frontier.push_back(out.size() - 1);
    for (int len = 2; len <= max_len; ++len) {
        std::vector<std::size_t> next;
        for (std::size_t id : frontier) {
            const int last = out[id].letters.back();
            for (int a = 0; a < n_letters; ++a) {
                if ((a ^ 1) == last) continue;
                Word w{out[id].letters, out[id].element * letters[a]};
                w.letters.push_back(a);
                if (add(std::move(w))) next.push_back(out.size() - 1);
            }
        }
        frontier = std::move(next);
    }
    if (collisions) *collisions = dropped;
    return out;
}

struct FiniteVolumeVerdict {
    enum class Kind { FiniteVolume, InfiniteVolume, Inconclusive };
    Kind kind = Kind::FiniteVolume;
    int witness = -1;  // index of the first non-parabolic holonomy
    std::optional<Family> witness_family;
    int ambiguous = -1;  // index of a holonomy too close to a family boundary
};

inline std::string to_string(FiniteVolumeVerdict::Kind k) {
    switch (k) {
    case FiniteVolumeVerdict::Kind::FiniteVolume: return "FiniteVolume";
    case FiniteVolumeVerdict::Kind::InfiniteVolume: return "InfiniteVolume";
    case FiniteVolumeVerdict::Kind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

// Finite volume iff every elementary-loop holonomy is parabolic.
inline FiniteVolumeVerdict finite_volume_criterion(const ConvexDomain& dom, const std::vector<ProjTransform>& holonomies,
                                                   double tol = 1e-8) {
    FiniteVolumeVerdict v;
    std::vector<DynClass> classes;
    for (std::size_t i = 0; i < holonomies.size(); ++i) {
        require(preserves_domain(holonomies[i], dom), ErrorCode::DomainNotPreserved,
                "holonomy " + std::to_string(i) + " does not preserve the domain");
        try {
            classes.push_back(classify(holonomies[i], tol));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotConvexCompatible) throw;
            v.kind = FiniteVolumeVerdict::Kind::Inconclusive;
            v.ambiguous = static_cast<int>(i);
            return v;
        }
        if (classes.back().near_boundary) {
            v.kind = FiniteVolumeVerdict::Kind::Inconclusive;
            v.ambiguous = static_cast<int>(i);
            return v;
        }
    }
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].family != Family::Parabolic) {
            v.kind = FiniteVolumeVerdict::Kind::InfiniteVolume;
            v.witness = static_cast<int>(i);
            v.witness_family = classes[i].family;
            return v;
        }
    return v;
}

// How far a point is from the boundary: |q(u)| for a conic, the smallest edge
// covector value for a polygonal domain (u the unit representative).
inline double boundary_deviation(const ConvexDomain& dom, const Vec3& v) {
    const Vec3 u = dom.lift(v).normalized();
    if (dom.kind() == ConvexDomain::Kind::Conic) return std::abs(dom.conic()(u));
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& l : dom.input_lines()) lo = std::min(lo, l.dot(u));
    return std::abs(lo);
}

struct LimitSetCloud {
    std::vector<ProjPoint> points;
    std::vector<int> word_length;
    double max_boundary_deviation = 0.0;
};

// Attracting fixed points of the hyperbolic words of length <= L.
inline LimitSetCloud limit_set_approx(const GroupPresentation& g, int max_len, double merge_tol = 1e-9) {
    LimitSetCloud cloud;
    for (const auto& w : enumerate_words(g, max_len)) {
        DynClass c;
        try {
            c = classify(w.element);
        } catch (const Error&) {
            continue;
        }
        if (c.family != Family::Hyperbolic) continue;
        const ProjPoint p = c.as<HyperbolicData>().p_plus;
        bool dup = false;
        for (const auto& q : cloud.points)
            if (q.approx_equal(p, merge_tol)) {
                dup = true;
                break;
            }
        if (dup) continue;
        cloud.points.push_back(p);
        cloud.word_length.push_back(static_cast<int>(w.letters.size()));
        if (g.domain)
            cloud.max_boundary_deviation =
                std::max(cloud.max_boundary_deviation, boundary_deviation(*g.domain, p.coords()));
    }
    return cloud;
}

// Largest chart distance from a boundary sample to the nearest cloud point:
// the resolution at which the cloud fills the boundary.
inline double coverage_resolution(const LimitSetCloud& cloud, const ConvexDomain& dom, int n_samples = 2000) {
    std::vector<Vec2> pts;
    for (const auto& p : cloud.points) pts.push_back(dom.chart().project(dom.lift(p.coords())));
    double worst = 0.0;
    for (const auto& b : boundary_samples(dom, n_samples)) {
        const Vec2 s = dom.chart().project(b);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) best = std::min(best, (p - s).norm());
        worst = std::max(worst, best);
    }
    return worst;
}

namespace detail {

// Real eigenspaces of m as orthonormal column bases.
inline std::vector<Eigen::MatrixXd> real_eigenspaces(const Mat3& m, double tol) {
    Eigen::EigenSolver<Mat3> es(m);
    const Eigen::Vector3cd ev = es.eigenvalues();
    const double rho = ev.cwiseAbs().maxCoeff();
    std::vector<double> vals;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(ev[i].imag()) > 1e-6 * rho) continue;
        bool dup = false;
        for (double v : vals) dup = dup || std::abs(v - ev[i].real()) <= 1e-6 * rho;
        if (!dup) vals.push_back(ev[i].real());
    }
    std::vector<Eigen::MatrixXd> out;
    for (double v : vals) {
        Eigen::MatrixXd ns = null_space(m - v * Mat3::Identity(), std::sqrt(tol));
        if (ns.cols() == 0) ns = Eigen::MatrixXd(smallest_right_singular(m - v * Mat3::Identity()));
        out.push_back(ns);
    }
    return out;
}

inline Eigen::MatrixXd intersect(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v, double tol) {
    Eigen::MatrixXd a(3, u.cols() + v.cols());
    a << u, -v;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    std::vector<int> idx;
    for (int i = 0; i < a.cols(); ++i)
        if (i >= s.size() || s[i] <= tol * std::max(s[0], 1.0)) idx.push_back(i);
    Eigen::MatrixXd out(3, static_cast<int>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) out.col(k) = u * svd.matrixV().col(idx[k]).head(u.cols());
    if (out.cols() == 0) return out;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(out);
    const int r = std::min<int>(static_cast<int>(out.cols()), 3);
    return qr.householderQ() * Eigen::MatrixXd::Identity(3, r);
}

inline bool common_eigenvector(const std::vector<Mat3>& ms, double tol) {
    std::vector<Eigen::MatrixXd> cur = real_eigenspaces(ms.front(), tol);
    for (std::size_t k = 1; k < ms.size() && !cur.empty(); ++k) {
        std::vector<Eigen::MatrixXd> next;
        for (const auto& u : cur)
            for (const auto& e : real_eigenspaces(ms[k], tol)) {
                Eigen::MatrixXd w = intersect(u, e, std::sqrt(tol));
                if (w.cols() > 0) next.push_back(w);
            }
        cur = std::move(next);
    }
    return !cur.empty();
}

}  // namespace detail

// False iff all generators share a fixed point or an invariant line.
inline bool irreducibility_check(const GroupPresentation& g, double tol = 1e-8) {
    require(!g.generators.empty(), ErrorCode::DegenerateInput, "no generators");
    std::vector<Mat3> ms, ts;
    for (const auto& h : g.generators) {
        ms.push_back(h.matrix());
        ts.push_back(h.matrix().transpose());
    }
    return !detail::common_eigenvector(ms, tol) && !detail::common_eigenvector(ts, tol);
}

}  // namespace hilbertine
