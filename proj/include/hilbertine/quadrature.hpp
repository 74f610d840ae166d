#pragma once

#include <array>
#include <cstddef>
#include <queue>
#include <vector>

#include "hilbertine/linalg.hpp"

namespace hilbertine {

using Triangle2 = std::array<Vec2, 3>;

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t cells = 0;
    bool converged = false;
};

namespace detail {

// Radon's 7-point rule, exact for polynomials of degree 5.
template <class F>
double radon7(F& f, const Triangle2& t) {
    static const double s15 = std::sqrt(15.0);
    static const double a1 = (6.0 - s15) / 21.0, b1 = (9.0 + 2.0 * s15) / 21.0;
    static const double a2 = (6.0 + s15) / 21.0, b2 = (9.0 - 2.0 * s15) / 21.0;
    static const double w0 = 9.0 / 40.0, w1 = (155.0 - s15) / 1200.0, w2 = (155.0 + s15) / 1200.0;
    const Vec2& p = t[0];
    const Vec2& q = t[1];
    const Vec2& r = t[2];
    auto at = [&](double u, double v, double w) { return f(Vec2(u * p + v * q + w * r)); };
    const double s = w0 * at(1.0 / 3, 1.0 / 3, 1.0 / 3) +
                     w1 * (at(a1, a1, b1) + at(a1, b1, a1) + at(b1, a1, a1)) +
                     w2 * (at(a2, a2, b2) + at(a2, b2, a2) + at(b2, a2, a2));
    return 0.5 * std::abs(cross2(q - p, r - p)) * s;
}

inline std::array<Triangle2, 4> split4(const Triangle2& t) {
    const Vec2 m01 = 0.5 * (t[0] + t[1]), m12 = 0.5 * (t[1] + t[2]), m20 = 0.5 * (t[2] + t[0]);
    return {Triangle2{t[0], m01, m20}, Triangle2{m01, t[1], m12}, Triangle2{m20, m12, t[2]}, Triangle2{m01, m12, m20}};
}

inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace detail

// Globally adaptive cubature over a union of triangles. Each cell carries the
// degree-5 estimate of its four midpoint children and, as error indicator, the
// gap to its own single-cell estimate. The worst cell is split until the summed
// indicator drops below max(rel_tol * |I|, abs_tol) or the cell budget runs out.
// Single-threaded, ties broken by creation order, final sum pairwise in
// creation order: the result is a pure function of the inputs.
template <class F>
QuadratureResult integrate_triangles(F&& f, const std::vector<Triangle2>& tris, double rel_tol,
                                     double abs_tol = 0.0, std::size_t max_cells = 10'000'000) {
    struct Cell {
        Triangle2 tri;
        std::array<double, 4> child;
        double value, error;
        bool alive;
    };
    std::vector<Cell> cells;
    auto make = [&](const Triangle2& t, double coarse) {
        Cell c{t, {}, 0.0, 0.0, true};
        const auto kids = detail::split4(t);
        for (int i = 0; i < 4; ++i) c.child[i] = detail::radon7(f, kids[i]);
        c.value = c.child[0] + c.child[1] + c.child[2] + c.child[3];
        c.error = std::abs(c.value - coarse);
        cells.push_back(c);
    };
    using Item = std::pair<double, std::size_t>;
    auto cmp = [](const Item& a, const Item& b) { return a.first < b.first || (a.first == b.first && a.second > b.second); };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);

    double total = 0.0, err = 0.0;
    for (const auto& t : tris) {
        make(t, detail::radon7(f, t));
        total += cells.back().value;
        err += cells.back().error;
        heap.emplace(cells.back().error, cells.size() - 1);
    }
    std::size_t live = cells.size();
    QuadratureResult res;
    while (!heap.empty()) {
        if (err <= std::max(rel_tol * std::abs(total), abs_tol)) {
            res.converged = true;
            break;
        }
        if (live + 3 > max_cells) break;
        const std::size_t id = heap.top().second;
        heap.pop();
        cells[id].alive = false;
        total -= cells[id].value;
        err -= cells[id].error;
        const auto kids = detail::split4(cells[id].tri);
        const auto coarse = cells[id].child;
        for (int i = 0; i < 4; ++i) {
            make(kids[i], coarse[i]);
            total += cells.back().value;
            err += cells.back().error;
            heap.emplace(cells.back().error, cells.size() - 1);
        }
        live += 3;
    }
    if (heap.empty()) res.converged = true;
    std::vector<double> vals, errs;
    for (const auto& c : cells)
        if (c.alive) {
            vals.push_back(c.value);
            errs.push_back(c.error);
        }
    res.value = detail::pairwise_sum(vals.data(), vals.size());
    res.error = detail::pairwise_sum(errs.data(), errs.size());
    res.cells = vals.size();
    return res;
}

// Fan triangulation of a convex polygon.
inline std::vector<Triangle2> fan(const std::vector<Vec2>& poly) {
    std::vector<Triangle2> out;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) out.push_back({poly[0], poly[i], poly[i + 1]});
    return out;
}

}  // namespace hilbertine
