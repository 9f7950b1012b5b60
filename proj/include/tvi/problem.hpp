#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tvi/sets.hpp"
#include "tvi/tensor.hpp"
#include "tvi/vec.hpp"

namespace tvi {

// TVI(X, A, q): find x* in X with <y - x*, A(x*)^{m-1} + q> >= 0 for all y in X.
struct TviProblem {
    SquareTensor A;
    Vector q;
    FeasibleSet X;

    TviProblem(SquareTensor tensor, Vector shift, FeasibleSet feasible)
        : A(std::move(tensor)), q(std::move(shift)), X(std::move(feasible)) {
        if (q.size() != A.dim() || X.dim() != A.dim())
            throw std::invalid_argument("TviProblem: inconsistent dimensions");
        if (!all_finite(q)) throw std::invalid_argument("TviProblem: q must be finite");
    }

    std::size_t dim() const { return A.dim(); }
    std::size_t order() const { return A.order(); }
};

struct VerificationReport {
    bool is_solution;
    double residual;
    Vector F_at_x;
};

// F(x) = A x^{m-1} + q
inline Vector eval_map(const TviProblem& P, std::span<const double> x) {
    return add(apply_power(P.A, x), P.q);
}

// ||x - P_X(x - F(x))||; zero exactly at solutions.
inline double natural_residual(const TviProblem& P, std::span<const double> x) {
    const Vector Fx = eval_map(P, x);
    const Vector y = P.X.project(axpy_neg(x, 1.0, Fx));
    return dist(x, y);
}

inline VerificationReport verify_solution(const TviProblem& P, std::span<const double> x,
                                          double tol) {
    if (!(tol > 0)) throw std::invalid_argument("verify_solution: tol must be positive");
    Vector Fx = eval_map(P, x);
    const double r = natural_residual(P, x);
    const bool ok = P.X.contains(x, tol) && r <= tol;
    return VerificationReport{ok, r, std::move(Fx)};
}

// <F(x) - F(y), x - y>; q cancels, so this equals <Ax^{m-1} - Ay^{m-1}, x - y>.
inline double pairing(const TviProblem& P, std::span<const double> x,
                      std::span<const double> y) {
    const Vector dF = sub(eval_map(P, x), eval_map(P, y));
    return dot(dF, sub(x, y));
}

// Order-2 problems are affine: F(x) = Mx + q.
inline std::pair<std::vector<Vector>, Vector> as_affine(const TviProblem& P) {
    if (P.order() != 2)
        throw std::invalid_argument("as_affine: requires an order-2 tensor");
    const std::size_t n = P.dim();
    const auto& a = P.A.data();
    std::vector<Vector> M(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = a[i * n + j];
    return {std::move(M), P.q};
}

}  // namespace tvi
