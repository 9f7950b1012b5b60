#pragma once

// Test-only oracles, kept independent of the library's contraction and
// solver code paths: recursive brute-force summations, finite differences,
// scalar root finding, and exhaustive LCP pattern enumeration.

#include <cmath>
#include <functional>
#include <vector>

#include "tvi/rng.hpp"
#include "tvi/tensor.hpp"

namespace oracle {

using tvi::Vector;

// Recursive nested summation of a_{i_1..i_m} * w_1[i_1] * ... * w_m[i_m]
// over all trailing modes, with mode 0 as the output index.
inline double bruteforce_sum(const tvi::DenseTensor& t,
                             const std::vector<Vector>& weights,
                             std::vector<std::size_t>& idx, std::size_t depth) {
    if (depth == t.order()) {
        double term = t(idx);
        for (std::size_t j = 0; j < t.order(); ++j)
            if (!weights[j].empty()) term *= weights[j][idx[j]];
        return term;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < t.dims()[depth]; ++i) {
        idx[depth] = i;
        acc += bruteforce_sum(t, weights, idx, depth + 1);
    }
    return acc;
}

// (A x^{m-1})_i by brute force.
inline Vector apply_power_bruteforce(const tvi::SquareTensor& A, const Vector& x) {
    const std::size_t n = A.dim();
    const std::size_t m = A.order();
    Vector out(n);
    std::vector<Vector> weights(m, x);
    weights[0] = {};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> idx(m);
        idx[0] = i;
        out[i] = bruteforce_sum(A.tensor(), weights, idx, 1);
    }
    return out;
}

inline double form_value_bruteforce(const tvi::SquareTensor& A, const Vector& x) {
    std::vector<Vector> weights(A.order(), x);
    std::vector<std::size_t> idx(A.order());
    return bruteforce_sum(A.tensor(), weights, idx, 0);
}

inline Vector contract_trailing_bruteforce(const tvi::DenseTensor& B,
                                           const std::vector<Vector>& us) {
    std::vector<Vector> weights;
    weights.push_back({});
    for (const auto& u : us) weights.push_back(u);
    Vector out(B.dims()[0]);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::vector<std::size_t> idx(B.order());
        idx[0] = i;
        out[i] = bruteforce_sum(B, weights, idx, 1);
    }
    return out;
}

// Central finite differences of a scalar function.
inline Vector finite_difference_gradient(const std::function<double(const Vector&)>& f,
                                         const Vector& x, double h) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Vector xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

// Bisection root of a monotone scalar function on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0) == (fm <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline tvi::SquareTensor random_square_tensor(std::size_t order, std::size_t n,
                                              tvi::Rng& rng, double lo = -1.0,
                                              double hi = 1.0) {
    std::size_t size = 1;
    for (std::size_t j = 0; j < order; ++j) size *= n;
    std::vector<double> e(size);
    for (auto& v : e) v = rng.uniform(lo, hi);
    return tvi::SquareTensor(order, n, std::move(e));
}

inline Vector random_vector(std::size_t n, tvi::Rng& rng, double lo = -1.0,
                            double hi = 1.0) {
    Vector v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

// Solve the LCP  x >= 0, Mx + q >= 0, x^T(Mx+q) = 0  by enumerating all 2^n
// complementarity patterns and solving the active linear system by Gaussian
// elimination. Returns all solutions found. n <= ~12.
inline std::vector<Vector> lcp_enumerate(const std::vector<Vector>& M, const Vector& q,
                                         double tol = 1e-9) {
    const std::size_t n = q.size();
    std::vector<Vector> solutions;
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) support.push_back(i);

        // solve M_SS z = -q_S
        const std::size_t s = support.size();
        std::vector<Vector> aug(s, Vector(s + 1));
        for (std::size_t r = 0; r < s; ++r) {
            for (std::size_t c = 0; c < s; ++c) aug[r][c] = M[support[r]][support[c]];
            aug[r][s] = -q[support[r]];
        }
        bool singular = false;
        for (std::size_t col = 0; col < s && !singular; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < s; ++r)
                if (std::fabs(aug[r][col]) > std::fabs(aug[piv][col])) piv = r;
            if (std::fabs(aug[piv][col]) < 1e-12) {
                singular = true;
                break;
            }
            std::swap(aug[col], aug[piv]);
            for (std::size_t r = 0; r < s; ++r) {
                if (r == col) continue;
                const double factor = aug[r][col] / aug[col][col];
                for (std::size_t c = col; c <= s; ++c) aug[r][c] -= factor * aug[col][c];
            }
        }
        if (singular) continue;

        Vector x(n, 0.0);
        bool ok = true;
        for (std::size_t r = 0; r < s; ++r) {
            const double v = aug[r][s] / aug[r][r];
            if (v < -tol) ok = false;
            x[support[r]] = std::max(v, 0.0);
        }
        if (!ok) continue;
        for (std::size_t i = 0; i < n && ok; ++i) {
            double w = q[i];
            for (std::size_t j = 0; j < n; ++j) w += M[i][j] * x[j];
            if (w < -tol) ok = false;
            if (x[i] > tol && std::fabs(w) > tol) ok = false;
        }
        if (!ok) continue;

        bool duplicate = false;
        for (const auto& sol : solutions)
            if (tvi::dist(sol, x) <= 10 * tol) duplicate = true;
        if (!duplicate) solutions.push_back(std::move(x));
    }
    return solutions;
}

}  // namespace oracle
