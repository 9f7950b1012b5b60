// End-to-end acceptance gate: one pass/fail line per criterion, nonzero exit
// if any fails. Tolerances and seeds are pinned; do not loosen them to make a
// failing criterion pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tvi/tvi.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using tvi::FeasibleSet;
using tvi::SolverParams;
using tvi::TviProblem;
using tvi::Vector;

namespace {

int g_failures = 0;

void report(int number, const char* title, bool ok, const std::string& detail = "") {
    std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", number, title,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Componentwise cube map: exact power evaluation and no strict-definiteness
//    counterexample on the whole plane.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto A = fixtures::diagonal_cube();
    tvi::Rng rng(101);
    bool power_ok = true;
    for (int t = 0; t < 1000 && power_ok; ++t) {
        const Vector x = oracle::random_vector(2, rng, -3.0, 3.0);
        const Vector got = tvi::apply_power(A, x);
        power_ok = std::fabs(got[0] - x[0] * x[0] * x[0]) <= 1e-12 &&
                   std::fabs(got[1] - x[1] * x[1] * x[1]) <= 1e-12;
    }
    const auto v = tvi::check_spd_on(A, FeasibleSet::whole_space(2), 100000, 101);
    const double dt = seconds_since(t0);
    report(1, "componentwise cube map: exact powers, no strict-definiteness witness",
           power_ok && !v.falsified && dt < 5.0,
           std::to_string(v.samples_tested) + " pair samples, " + std::to_string(dt) + "s");
}

// 2. Quartic-form tensor: exact form values, definite on the plane, but the
//    known witness pair breaks strictness on the nonnegative orthant.
void criterion2() {
    const auto A = fixtures::coupled_cube();
    tvi::Rng rng(102);
    bool form_ok = true;
    for (int t = 0; t < 1000 && form_ok; ++t) {
        const Vector x = oracle::random_vector(2, rng, -2.0, 2.0);
        const double want = std::pow(x[0], 4) + std::pow(x[1], 4);
        form_ok = std::fabs(tvi::form_value(A, x) - want) <= 1e-12;
    }
    const auto pd = tvi::check_pd_on(A, FeasibleSet::whole_space(2), 100000, 102);
    const auto spd = tvi::check_spd_on(A, FeasibleSet::nonnegative_orthant(2), 1000, 102);
    const TviProblem P(A, Vector{0.0, 0.0}, FeasibleSet::nonnegative_orthant(2));
    const double replay = tvi::pairing(P, Vector{2.0, 3.0}, Vector{1.0, 3.0});
    report(2, "quartic form: definite on the plane, strictness broken on the orthant",
           form_ok && !pd.falsified && spd.falsified && replay == -2.0,
           "witness pairing = " + std::to_string(replay));
}

// 3. Strong-monotonicity modulus: at least 1 on the halfline slice, and the
//    pinned probe pair caps the estimate at exactly 0.75 on the full line.
void criterion3() {
    const auto A = fixtures::diagonal_cube();
    const TviProblem half(A, Vector{0.0, 0.0}, FeasibleSet::box({1.0, 1.0}, {tvi::kInf, 1.0}));
    const auto est_half = tvi::estimate_strong_modulus(half, 100000, 103);

    const TviProblem line(A, Vector{0.0, 0.0},
                          FeasibleSet::box({-tvi::kInf, 1.0}, {tvi::kInf, 1.0}));
    const Vector x{1.0, 1.0}, y{-0.5, 1.0};
    const Vector d = tvi::sub(x, y);
    const double ratio = tvi::pairing(line, x, y) / tvi::dot(d, d);
    const auto est_line = tvi::estimate_strong_modulus(line, 100000, 103);
    report(3, "modulus estimate: >= 1 on the halfline, probe ratio 0.75 on the line",
           est_half.c_hat >= 1.0 && std::fabs(ratio - 0.75) <= 1e-12 &&
               est_line.c_hat <= ratio + 1e-12,
           "halfline c_hat = " + std::to_string(est_half.c_hat) +
               ", line ratio = " + std::to_string(ratio));
}

// 4. Vanishing modulus trace: strictly decreasing, below 1e-6 within 10
//    halvings on the unit box.
void criterion4() {
    const TviProblem P(fixtures::diagonal_cube(), Vector{0.0, 0.0},
                       FeasibleSet::box({0.0, 0.0}, {1.0, 1.0}));
    const auto r = tvi::no_strong_monotonicity_trace(P, Vector{1.0, 0.0}, 11);
    bool decreasing = true;
    for (std::size_t k = 1; k < r.size(); ++k) decreasing = decreasing && r[k] < r[k - 1];
    report(4, "modulus trace strictly decreasing, below 1e-6 within 10 halvings",
           decreasing && r.back() < 1e-6, "final ratio = " + std::to_string(r.back()));
}

// 5. Every definiteness counterexample x also breaks strictness via the pair
//    (x, 0) on sets containing the origin. Zero violations over 50 tensors.
void criterion5() {
    tvi::Rng rng(105);
    const auto X = FeasibleSet::box(Vector(3, -1.0), Vector(3, 1.0));
    std::size_t falsified = 0, violations = 0;
    for (int t = 0; t < 50; ++t) {
        const auto A = oracle::random_square_tensor(4, 3, rng);
        const auto pd = tvi::check_pd_on(A, X, 500, 105 + t);
        if (!pd.falsified) continue;
        ++falsified;
        const auto spd = tvi::check_spd_on(A, X, 0, 0, {{pd.witness_x, Vector(3, 0.0)}});
        if (!spd.falsified) ++violations;
    }
    report(5, "definiteness witnesses transfer to strictness via (x, 0)",
           violations == 0 && falsified > 0,
           std::to_string(falsified) + "/50 falsified, " + std::to_string(violations) +
               " violations");
}

// 6. Uniqueness probe: 20 random offsets on the unit box, 10 starts each,
//    always exactly one cluster of converged solutions.
void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    tvi::Rng rng(106);
    SolverParams params;
    params.tol = 1e-10;
    bool ok = true;
    std::string detail;
    for (int t = 0; t < 20 && ok; ++t) {
        const TviProblem P(fixtures::diagonal_cube(),
                           {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)},
                           FeasibleSet::box({0.0, 0.0}, {1.0, 1.0}));
        const auto rep = tvi::gus_probe(P, 10, 1.0, params);
        if (rep.clusters.size() != 1 || !rep.failed_runs.empty()) {
            ok = false;
            detail = "q draw " + std::to_string(t) + ": " +
                     std::to_string(rep.clusters.size()) + " clusters, " +
                     std::to_string(rep.failed_runs.size()) + " failed runs";
            break;
        }
        for (const auto& c : rep.clusters)
            if (tvi::natural_residual(P, c.representative) > 1e-8) ok = false;
    }
    const double dt = seconds_since(t0);
    if (detail.empty()) detail = std::to_string(dt) + "s";
    report(6, "multistart probe finds exactly one solution cluster for 20 offsets",
           ok && dt < 30.0, detail);
}

// 7. Game-to-problem identity: the assembled map equals the stacked player
//    gradients to 1e-12, and gradients match finite differences of the costs.
void criterion7() {
    tvi::Rng rng(107);
    const std::vector<std::vector<std::size_t>> shapes{{2, 2}, {2, 3}, {2, 2, 2}, {3, 2, 2}};
    bool ok = true;
    for (int g = 0; g < 100 && ok; ++g) {
        const auto& dims = shapes[g % shapes.size()];
        const std::size_t m = dims.size();
        std::size_t size = 1;
        for (std::size_t r : dims) size *= r;
        std::vector<tvi::DenseTensor> payoffs;
        std::vector<FeasibleSet> sets;
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<double> e(size);
            for (auto& v : e) v = rng.uniform(-1.0, 1.0);
            payoffs.emplace_back(dims, std::move(e));
            sets.push_back(FeasibleSet::simplex(dims[k]));
        }
        const tvi::GameSpec G(std::move(payoffs), std::move(sets));
        const auto P = tvi::to_tvi(G);

        Vector x;
        for (std::size_t k = 0; k < m; ++k) {
            const Vector s = G.strategy_sets[k].project(oracle::random_vector(dims[k], rng));
            x.insert(x.end(), s.begin(), s.end());
        }
        const Vector mapped = tvi::eval_map(P, x);
        Vector stacked;
        for (std::size_t k = 0; k < m; ++k) {
            const Vector grad = tvi::player_gradient(G, k, x);
            stacked.insert(stacked.end(), grad.begin(), grad.end());
        }
        for (std::size_t i = 0; i < mapped.size(); ++i)
            if (std::fabs(mapped[i] - stacked[i]) > 1e-12) ok = false;

        for (std::size_t k = 0; k < m && ok; ++k) {
            auto fk = [&](const Vector& xk) {
                Vector xm = x;
                const std::size_t off = G.block_offset(k);
                for (std::size_t i = 0; i < xk.size(); ++i) xm[off + i] = xk[i];
                return tvi::cost(G, k, xm);
            };
            const auto bk = G.block(x, k);
            const Vector fd =
                oracle::finite_difference_gradient(fk, Vector(bk.begin(), bk.end()), 1e-6);
            const Vector grad = tvi::player_gradient(G, k, x);
            for (std::size_t i = 0; i < grad.size(); ++i) {
                const double scale = std::max(1.0, std::fabs(grad[i]));
                if (std::fabs(fd[i] - grad[i]) / scale > 1e-6) ok = false;
            }
        }
    }
    report(7, "assembled game map equals stacked gradients; gradients match FD", ok);
}

// 8. Matching pennies round trip: the solver's equilibrium passes the Nash
//    check and lands on the uniform mixture.
void criterion8() {
    const tvi::DenseTensor A1({2, 2}, {1.0, -1.0, -1.0, 1.0});
    const tvi::DenseTensor A2({2, 2}, {-1.0, 1.0, 1.0, -1.0});
    const tvi::GameSpec G({A1, A2}, {FeasibleSet::simplex(2), FeasibleSet::simplex(2)});
    const auto P = tvi::to_tvi(G);
    SolverParams params;
    params.tol = 1e-10;
    const auto rep = tvi::solve_extragradient(P, Vector{1.0, 0.0, 0.0, 1.0}, params);
    bool ok = rep.status == tvi::SolveStatus::Converged;
    if (ok) ok = tvi::verify_nash(G, rep.x, 1e-6).is_equilibrium;
    double max_dev = 0.0;
    if (ok) {
        // grid best responses at the uniform profile stay ties; the solve
        // itself must land on (0.5, 0.5) for both players
        for (double v : rep.x) max_dev = std::max(max_dev, std::fabs(v - 0.5));
        ok = max_dev <= 1e-4;
        for (std::size_t k = 0; k < 2 && ok; ++k) {
            const Vector br = tvi::best_response_grid(G, k, rep.x, 101);
            Vector probe = rep.x;
            const std::size_t off = G.block_offset(k);
            for (std::size_t i = 0; i < br.size(); ++i) probe[off + i] = br[i];
            ok = tvi::cost(G, k, probe) >= tvi::cost(G, k, rep.x) - 1e-4;
        }
    }
    report(8, "matching pennies solves to the uniform mixed equilibrium",
           ok, "max deviation from 0.5 = " + std::to_string(max_dev));
}

// 9. Affine problems on the orthant agree with exhaustive complementarity
//    enumeration.
void criterion9() {
    tvi::Rng rng(109);
    SolverParams params;
    params.tol = 1e-10;
    bool ok = true;
    for (int t = 0; t < 50 && ok; ++t) {
        const std::size_t n = 2 + (rng.next_u64() % 5);  // 2..6
        std::vector<double> entries(n * n);
        for (auto& v : entries) v = rng.uniform(-1.0, 1.0);
        for (std::size_t i = 0; i < n; ++i)
            entries[i * n + i] = static_cast<double>(n) + 1.0;  // diagonal dominance
        const tvi::SquareTensor M(2, n, entries);
        const Vector q = oracle::random_vector(n, rng, -2.0, 2.0);
        const TviProblem P(M, q, FeasibleSet::nonnegative_orthant(n));

        const auto rep = tvi::solve_extragradient(P, Vector(n, 1.0), params);
        if (rep.status != tvi::SolveStatus::Converged) {
            ok = false;
            break;
        }
        std::vector<Vector> Mrows(n, Vector(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) Mrows[i][j] = entries[i * n + j];
        const auto sols = oracle::lcp_enumerate(Mrows, q);
        ok = sols.size() == 1 && tvi::dist(rep.x, sols[0]) <= 1e-6;
    }
    report(9, "affine orthant problems match complementarity enumeration", ok);
}

// 10. For symmetric tensors the solved point is a stationary point of the
//     potential f(x) = (x . Ax^{m-1})/m + q . x over the unit ball, with the
//     gradient taken by finite differences of f itself.
void criterion10() {
    tvi::Rng rng(110);
    const auto X = FeasibleSet::ball(Vector(3, 0.0), 1.0);
    SolverParams params;
    params.tol = 1e-9;
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 20 && ok; ++t) {
        auto base = oracle::random_square_tensor(4, 3, rng);
        std::vector<double> e = base.tensor().data();
        for (auto& v : e) v *= 0.05;
        tvi::SquareTensor A = tvi::symmetrize(tvi::SquareTensor(4, 3, std::move(e)));
        // dominant diagonal keeps the form definite on the ball
        std::vector<double> d = A.tensor().data();
        const tvi::DenseTensor shape(std::vector<std::size_t>(4, 3));
        for (std::size_t i = 0; i < 3; ++i) {
            const std::vector<std::size_t> diag(4, i);
            d[shape.flat_index(diag)] += 1.0;
        }
        A = tvi::SquareTensor(4, 3, std::move(d));
        const Vector q = oracle::random_vector(3, rng, -0.5, 0.5);
        const TviProblem P(A, q, X);

        const auto rep = tvi::solve_extragradient(P, Vector(3, 0.1), params);
        if (rep.status != tvi::SolveStatus::Converged) {
            ok = false;
            break;
        }
        auto f = [&](const Vector& x) {
            return tvi::form_value(A, x) / 4.0 + tvi::dot(q, x);
        };
        const Vector g = oracle::finite_difference_gradient(f, rep.x, 1e-6);
        const double stat = tvi::dist(rep.x, X.project(tvi::axpy_neg(rep.x, 1.0, g)));
        worst = std::max(worst, stat);
        ok = stat <= 1e-6;
    }
    report(10, "solutions are stationary points of the symmetric potential on the ball",
           ok, "worst stationarity residual = " + std::to_string(worst));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
