#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tvi/problem.hpp"
#include "tvi/rng.hpp"

namespace tvi {

// Falsifier outcome. NotFalsified is sampling evidence, never a proof:
// deciding positive definiteness of higher-degree forms is hard in general,
// so reports always carry the number of samples tested.
struct Verdict {
    bool falsified = false;
    Vector witness_x;   // empty unless falsified
    Vector witness_y;   // empty for the single-point (PD) check
    double value = 0.0; // the violating form value / pairing
    std::size_t samples_tested = 0;
};

struct ModulusEstimate {
    double c_hat;
    std::pair<Vector, Vector> argmin_pair;
};

// Strictness tolerance, applied to scale-normalized values: the form is
// divided by ||x||^m and the pairing by ||x-y||^2 max(||x||,||y||)^{m-2}
// before comparison, so small-norm samples cannot fake a violation of the
// strict inequalities. Verdicts still carry the raw value for replay.
// The pair-distance floor avoids 0/0 in the modulus.
inline constexpr double kStrictTol = 1e-12;
inline constexpr double kPairFloor = 1e-9;

namespace detail {

// Deterministic single-point probes: scaled signed basis vectors, projected.
inline std::vector<Vector> point_probes(const FeasibleSet& X) {
    const std::size_t n = X.dim();
    std::vector<Vector> probes;
    for (double scale : {1.0, 0.5, 2.0}) {
        for (std::size_t i = 0; i < n; ++i) {
            for (double sign : {1.0, -1.0}) {
                Vector e(n, 0.0);
                e[i] = sign * scale;
                probes.push_back(X.project(e));
            }
        }
    }
    return probes;
}

// Deterministic pair probes; includes the dimension-2 witness pairs from the
// worked examples since they expose boundary pathologies random sampling can
// miss.
inline std::vector<std::pair<Vector, Vector>> pair_probes(const FeasibleSet& X) {
    const std::size_t n = X.dim();
    std::vector<std::pair<Vector, Vector>> probes;
    if (n == 2) {
        probes.emplace_back(X.project(Vector{2.0, 3.0}), X.project(Vector{1.0, 3.0}));
        probes.emplace_back(X.project(Vector{1.0, 1.0}), X.project(Vector{-0.5, 1.0}));
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, 0.0);
        e[i] = 1.0;
        probes.emplace_back(X.project(e), X.project(Vector(n, 0.0)));
        e[i] = -1.0;
        probes.emplace_back(X.project(e), X.project(Vector(n, 0.0)));
    }
    return probes;
}

}  // namespace detail

// Falsifier for "A x^m > 0 for all feasible x != 0".
inline Verdict check_pd_on(const SquareTensor& A, const FeasibleSet& X,
                           std::size_t n_samples, std::uint64_t seed,
                           const std::vector<Vector>& extra_probes = {}) {
    if (X.dim() != A.dim()) throw std::invalid_argument("check_pd_on: dimension mismatch");
    Verdict v;
    const double m = static_cast<double>(A.order());
    auto consider = [&](const Vector& x) -> bool {
        const double nx = norm2(x);
        if (nx <= kPairFloor) return false;
        ++v.samples_tested;
        const double val = form_value(A, x);
        if (val / std::pow(nx, m) <= kStrictTol) {
            v.falsified = true;
            v.witness_x = x;
            v.value = val;
            return true;
        }
        return false;
    };

    for (const auto& p : extra_probes)
        if (consider(X.project(p))) return v;
    for (const auto& p : detail::point_probes(X))
        if (consider(p)) return v;

    Rng rng(seed);
    const std::size_t n = X.dim();
    for (std::size_t s = 0; s < n_samples; ++s) {
        if (consider(X.project(rng.gaussian_vec(n)))) return v;
    }
    return v;
}

// Falsifier for strict positive definiteness on X:
// <Ax^{m-1} - Ay^{m-1}, x - y> > 0 for all feasible x != y.
inline Verdict check_spd_on(const SquareTensor& A, const FeasibleSet& X,
                            std::size_t n_samples, std::uint64_t seed,
                            const std::vector<std::pair<Vector, Vector>>& extra_probes = {}) {
    if (X.dim() != A.dim()) throw std::invalid_argument("check_spd_on: dimension mismatch");
    const TviProblem P(A, Vector(A.dim(), 0.0), X);
    Verdict v;
    const double m = static_cast<double>(A.order());
    auto consider = [&](const Vector& x, const Vector& y) -> bool {
        const double d = dist(x, y);
        if (d < kPairFloor) return false;
        ++v.samples_tested;
        const double val = pairing(P, x, y);
        const double scale = d * d * std::pow(std::max(norm2(x), norm2(y)), m - 2.0);
        if (val / scale <= kStrictTol) {
            v.falsified = true;
            v.witness_x = x;
            v.witness_y = y;
            v.value = val;
            return true;
        }
        return false;
    };

    for (const auto& [x, y] : extra_probes)
        if (consider(X.project(x), X.project(y))) return v;
    for (const auto& [x, y] : detail::pair_probes(X))
        if (consider(x, y)) return v;

    Rng rng(seed);
    const std::size_t n = X.dim();
    for (std::size_t s = 0; s < n_samples; ++s) {
        const Vector x = X.project(rng.gaussian_vec(n));
        const Vector y = X.project(rng.gaussian_vec(n));
        if (consider(x, y)) return v;
    }
    return v;
}

// Sampled upper bound on any valid strong-monotonicity constant c of
// <F(x)-F(y), x-y> >= c ||x-y||^2 over X.
inline ModulusEstimate estimate_strong_modulus(const TviProblem& P, std::size_t n_samples,
                                               std::uint64_t seed) {
    const std::size_t n = P.dim();
    ModulusEstimate est{std::numeric_limits<double>::infinity(), {}};
    auto consider = [&](const Vector& x, const Vector& y) {
        const Vector d = sub(x, y);
        const double dd = dot(d, d);
        if (dd < kPairFloor * kPairFloor) return;
        const double ratio = pairing(P, x, y) / dd;
        if (ratio < est.c_hat) {
            est.c_hat = ratio;
            est.argmin_pair = {x, y};
        }
    };

    for (const auto& [x, y] : detail::pair_probes(P.X)) consider(x, y);
    Rng rng(seed);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const Vector x = P.X.project(rng.gaussian_vec(n));
        const Vector y = P.X.project(rng.gaussian_vec(n));
        consider(x, y);
    }
    return est;
}

// r_k = A(t_k d)^m / ||t_k d||^2 for t_k = 2^{-k}: the best possible
// strong-monotonicity modulus against y = 0 at scale t_k. For m > 2 this
// decays to 0, which is why no such F is strongly monotone on sets
// containing the origin.
inline std::vector<double> no_strong_monotonicity_trace(const TviProblem& P,
                                                        std::span<const double> direction,
                                                        std::size_t steps) {
    if (P.order() <= 2)
        throw std::invalid_argument("no_strong_monotonicity_trace: requires m > 2");
    if (!P.X.contains_origin())
        throw std::invalid_argument("no_strong_monotonicity_trace: X must contain the origin");
    if (direction.size() != P.dim())
        throw std::invalid_argument("no_strong_monotonicity_trace: dimension mismatch");
    if (norm2(direction) <= 0.0)
        throw std::invalid_argument("no_strong_monotonicity_trace: zero direction");
    if (steps == 0) throw std::invalid_argument("no_strong_monotonicity_trace: steps must be positive");

    std::vector<double> trace;
    trace.reserve(steps);
    double t = 1.0;
    for (std::size_t k = 0; k < steps; ++k, t *= 0.5) {
        const Vector x = scaled(direction, t);
        if (!P.X.contains(x, kDefaultSetTol))
            throw std::invalid_argument(
                "no_strong_monotonicity_trace: scaled direction leaves X");
        trace.push_back(form_value(P.A, x) / dot(x, x));
    }
    return trace;
}

}  // namespace tvi
