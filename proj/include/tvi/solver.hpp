#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvi/problem.hpp"
#include "tvi/rng.hpp"

namespace tvi {

struct SolverParams {
    std::size_t max_iters = 100000;
    double tol = 1e-8;
    double initial_step = 1.0;
    double backtrack_factor = 0.5;   // in (0,1)
    double armijo_constant = 0.5;    // in (0,1)
    std::uint64_t seed = 0;

    void validate() const {
        if (max_iters == 0) throw std::invalid_argument("SolverParams: max_iters must be positive");
        if (!(tol > 0)) throw std::invalid_argument("SolverParams: tol must be positive");
        if (!(initial_step > 0)) throw std::invalid_argument("SolverParams: initial_step must be positive");
        if (!(backtrack_factor > 0 && backtrack_factor < 1))
            throw std::invalid_argument("SolverParams: backtrack_factor must be in (0,1)");
        if (!(armijo_constant > 0 && armijo_constant < 1))
            throw std::invalid_argument("SolverParams: armijo_constant must be in (0,1)");
    }
};

enum class SolveStatus { Converged, MaxIters, LineSearchFailed };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::MaxIters: return "MaxIters";
        case SolveStatus::LineSearchFailed: return "LineSearchFailed";
    }
    return "Unknown";
}

struct SolveReport {
    SolveStatus status = SolveStatus::MaxIters;
    Vector x;
    double residual = 0.0;
    std::size_t iterations = 0;
    std::vector<double> residual_trace;
    bool x0_was_projected = false;
};

inline constexpr double kMinLineSearchStep = 1e-16;

// Extragradient with backtracking:
//   y_k     = P_X(x_k - eta_k F(x_k)),  eta_k halved until
//             ||F(x_k) - F(y_k)|| <= (c/eta_k) ||x_k - y_k||
//   x_{k+1} = P_X(x_k - eta_k F(y_k))
// The accepted step also satisfies the weaker pairing bound
// <F(x_k)-F(y_k), x_k-y_k> <= (c/eta_k)||x_k-y_k||^2 by Cauchy-Schwarz;
// the norm form is needed so that rotational (skew) monotone maps contract.
// F need not be globally Lipschitz for m > 2, so a fixed step is unsafe;
// the line search restores convergence for continuous monotone maps.
inline SolveReport solve_extragradient(const TviProblem& P, std::span<const double> x0,
                                       const SolverParams& params) {
    params.validate();
    SolveReport rep;
    Vector x = P.X.project(x0);
    rep.x0_was_projected = dist(x, x0) > params.tol;

    double eta = params.initial_step;
    for (std::size_t k = 0; k < params.max_iters; ++k) {
        const Vector Fx = eval_map(P, x);
        const double res = dist(x, P.X.project(axpy_neg(x, 1.0, Fx)));
        rep.residual_trace.push_back(res);
        rep.iterations = k;
        if (res <= params.tol) {
            rep.status = SolveStatus::Converged;
            rep.x = std::move(x);
            rep.residual = res;
            return rep;
        }

        // allow the step to recover between iterations
        eta = std::min(eta / params.backtrack_factor, params.initial_step);
        Vector y, Fy;
        bool accepted = false;
        while (eta >= kMinLineSearchStep) {
            y = P.X.project(axpy_neg(x, eta, Fx));
            Fy = eval_map(P, y);
            const Vector d = sub(x, y);
            const double lhs = norm2(sub(Fx, Fy));
            const double rhs = (params.armijo_constant / eta) * norm2(d);
            if (lhs <= rhs) {
                accepted = true;
                break;
            }
            eta *= params.backtrack_factor;
        }
        if (!accepted) {
            rep.status = SolveStatus::LineSearchFailed;
            rep.x = std::move(x);
            rep.residual = res;
            return rep;
        }
        x = P.X.project(axpy_neg(x, eta, Fy));
    }

    rep.status = SolveStatus::MaxIters;
    rep.residual = natural_residual(P, x);
    rep.residual_trace.push_back(rep.residual);
    rep.iterations = params.max_iters;
    rep.x = std::move(x);
    return rep;
}

// Projected fixed-point iteration x_{k+1} = P_X(x_k - gamma F(x_k)) with
// gamma halved whenever the residual increases. Suited to strongly monotone
// instances; diverging runs (residual 10x above its minimum) stop early.
inline SolveReport solve_fixed_point(const TviProblem& P, std::span<const double> x0,
                                     const SolverParams& params) {
    params.validate();
    SolveReport rep;
    Vector x = P.X.project(x0);
    rep.x0_was_projected = dist(x, x0) > params.tol;

    double gamma = params.initial_step;
    double best = std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < params.max_iters; ++k) {
        const Vector Fx = eval_map(P, x);
        const double res = dist(x, P.X.project(axpy_neg(x, 1.0, Fx)));
        rep.residual_trace.push_back(res);
        rep.iterations = k;
        if (res <= params.tol) {
            rep.status = SolveStatus::Converged;
            rep.x = std::move(x);
            rep.residual = res;
            return rep;
        }
        best = std::min(best, res);
        if (res > 10.0 * best) {  // divergence
            rep.status = SolveStatus::MaxIters;
            rep.x = std::move(x);
            rep.residual = res;
            return rep;
        }
        if (res > prev) gamma *= 0.5;
        prev = res;
        x = P.X.project(axpy_neg(x, gamma, Fx));
    }
    rep.status = SolveStatus::MaxIters;
    rep.residual = natural_residual(P, x);
    rep.residual_trace.push_back(rep.residual);
    rep.iterations = params.max_iters;
    rep.x = std::move(x);
    return rep;
}

struct SolutionCluster {
    Vector representative;
    std::size_t count = 0;
};

struct GusProbeReport {
    std::vector<SolutionCluster> clusters;
    std::size_t converged_runs = 0;
    std::vector<SolveReport> failed_runs;  // never silently dropped
};

// Multistart uniqueness probe: run the extragradient solver from num_starts
// seeded feasible starts and cluster the converged endpoints (radius 10*tol).
// Exactly one cluster is uniqueness evidence, not proof.
inline GusProbeReport gus_probe(const TviProblem& P, std::size_t num_starts, double spread,
                                const SolverParams& params) {
    if (num_starts == 0) throw std::invalid_argument("gus_probe: num_starts must be positive");
    if (!(spread > 0)) throw std::invalid_argument("gus_probe: spread must be positive");
    params.validate();

    const Vector anchor = P.X.project(Vector(P.dim(), 0.0));
    GusProbeReport out;
    const double cluster_radius = 10.0 * params.tol;
    for (std::size_t s = 0; s < num_starts; ++s) {
        // per-start substream so concurrent evaluation could never change results
        Rng rng = Rng::substream(params.seed, s);
        Vector z = anchor;
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += spread * rng.gaussian();
        const Vector start = P.X.project(z);

        SolveReport rep = solve_extragradient(P, start, params);
        if (rep.status != SolveStatus::Converged) {
            out.failed_runs.push_back(std::move(rep));
            continue;
        }
        ++out.converged_runs;
        bool placed = false;
        for (auto& c : out.clusters) {
            if (dist(c.representative, rep.x) <= cluster_radius) {
                ++c.count;
                placed = true;
                break;
            }
        }
        if (!placed) out.clusters.push_back(SolutionCluster{std::move(rep.x), 1});
    }
    return out;
}

}  // namespace tvi
