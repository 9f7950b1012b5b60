#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "tvi/problem.hpp"
#include "tvi/sets.hpp"
#include "tvi/tensor.hpp"

namespace tvi {

// m-person noncooperative game with multilinear costs: player k pays the
// full contraction of its payoff tensor A^k against the strategy profile
// (x^1,...,x^m) and chooses x^k within a closed convex strategy set.
struct GameSpec {
    std::vector<DenseTensor> payoffs;      // one r_1 x ... x r_m tensor per player
    std::vector<FeasibleSet> strategy_sets;

    GameSpec(std::vector<DenseTensor> payoff_tensors, std::vector<FeasibleSet> sets)
        : payoffs(std::move(payoff_tensors)), strategy_sets(std::move(sets)) {
        const std::size_t m = payoffs.size();
        if (m < 2) throw std::invalid_argument("GameSpec: need at least 2 players");
        if (strategy_sets.size() != m)
            throw std::invalid_argument("GameSpec: one strategy set per player required");
        const auto& dims = payoffs[0].dims();
        if (dims.size() != m)
            throw std::invalid_argument("GameSpec: payoff tensor order must equal player count");
        for (const auto& t : payoffs)
            if (t.dims() != dims)
                throw std::invalid_argument("GameSpec: payoff tensors must share dims");
        for (std::size_t k = 0; k < m; ++k)
            if (strategy_sets[k].dim() != dims[k])
                throw std::invalid_argument("GameSpec: strategy set dimension mismatch");
    }

    std::size_t players() const { return payoffs.size(); }
    const std::vector<std::size_t>& dims() const { return payoffs[0].dims(); }

    std::size_t total_dim() const {
        std::size_t n = 0;
        for (std::size_t r : dims()) n += r;
        return n;
    }

    std::size_t block_offset(std::size_t k) const {
        std::size_t off = 0;
        for (std::size_t j = 0; j < k; ++j) off += dims()[j];
        return off;
    }

    std::span<const double> block(std::span<const double> x, std::size_t k) const {
        if (x.size() != total_dim())
            throw std::invalid_argument("GameSpec: block vector dimension mismatch");
        return x.subspan(block_offset(k), dims()[k]);
    }
};

struct NashReport {
    bool is_equilibrium = false;
    std::vector<double> per_player_residuals;
};

// f_k(x) = sum a^k_{i_1..i_m} x^1_{i_1} ... x^m_{i_m}
inline double cost(const GameSpec& G, std::size_t k, std::span<const double> x) {
    const std::size_t m = G.players();
    if (k >= m) throw std::invalid_argument("cost: player index out of range");
    std::vector<std::span<const double>> blocks(m);
    for (std::size_t j = 0; j < m; ++j) blocks[j] = G.block(x, j);

    const auto& t = G.payoffs[k];
    const auto& a = t.data();
    double acc = 0.0;
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t f = 0; f < a.size(); ++f) {
        double term = a[f];
        if (term != 0.0) {
            for (std::size_t j = 0; j < m; ++j) term *= blocks[j][idx[j]];
            acc += term;
        }
        for (std::size_t j = m; j-- > 0;) {
            if (++idx[j] < t.dims()[j]) break;
            idx[j] = 0;
        }
    }
    return acc;
}

// grad_{x^k} f_k: contraction of A^k over every mode except mode k. f_k is
// linear in x^k, so this is exact.
inline Vector player_gradient(const GameSpec& G, std::size_t k, std::span<const double> x) {
    const std::size_t m = G.players();
    if (k >= m) throw std::invalid_argument("player_gradient: player index out of range");
    std::vector<std::span<const double>> blocks(m);
    for (std::size_t j = 0; j < m; ++j) blocks[j] = G.block(x, j);

    const auto& t = G.payoffs[k];
    const auto& a = t.data();
    Vector out(t.dims()[k], 0.0);
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t f = 0; f < a.size(); ++f) {
        double term = a[f];
        if (term != 0.0) {
            for (std::size_t j = 0; j < m; ++j)
                if (j != k) term *= blocks[j][idx[j]];
            out[idx[k]] += term;
        }
        for (std::size_t j = m; j-- > 0;) {
            if (++idx[j] < t.dims()[j]) break;
            idx[j] = 0;
        }
    }
    return out;
}

// Block tensor A in T_{m,n}, n = sum r_j, with
//   apply_power(A, x) = (player_gradient(G, k, x))_{k in [m]}  (stacked).
// Each payoff entry a^k_{i_1..i_m} lands at global indices whose first mode
// is player k's output slot (offset + i_k) and whose trailing modes hold the
// remaining players' variables; distinct block offsets make the contraction
// pick exactly the other players' coordinates.
inline SquareTensor assemble(const GameSpec& G) {
    const std::size_t m = G.players();
    const std::size_t n = G.total_dim();
    std::vector<std::size_t> offsets(m);
    for (std::size_t k = 0; k < m; ++k) offsets[k] = G.block_offset(k);

    DenseTensor shape(std::vector<std::size_t>(m, n));
    std::vector<double> entries(shape.size(), 0.0);

    std::vector<std::size_t> gidx(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto& t = G.payoffs[k];
        const auto& a = t.data();
        std::vector<std::size_t> idx(m, 0);
        for (std::size_t f = 0; f < a.size(); ++f) {
            if (a[f] != 0.0) {
                gidx[0] = offsets[k] + idx[k];
                std::size_t slot = 1;
                for (std::size_t j = 0; j < m; ++j) {
                    if (j == k) continue;
                    gidx[slot++] = offsets[j] + idx[j];
                }
                entries[shape.flat_index(gidx)] = a[f];
            }
            for (std::size_t j = m; j-- > 0;) {
                if (++idx[j] < t.dims()[j]) break;
                idx[j] = 0;
            }
        }
    }
    return SquareTensor(DenseTensor(std::vector<std::size_t>(m, n), std::move(entries)));
}

// The game as TVI(X, A, 0) with X the product of the strategy sets.
inline TviProblem to_tvi(const GameSpec& G) {
    return TviProblem(assemble(G), Vector(G.total_dim(), 0.0),
                      FeasibleSet::product(G.strategy_sets));
}

// Per-player projected-gradient residuals; x is an equilibrium iff every
// player's own strategy is a fixed point of its projected best-response step
// (the costs are linear, hence convex, in the own strategy).
inline NashReport verify_nash(const GameSpec& G, std::span<const double> x, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("verify_nash: tol must be positive");
    NashReport rep;
    rep.is_equilibrium = true;
    const std::size_t m = G.players();
    for (std::size_t k = 0; k < m; ++k) {
        const auto xk = G.block(x, k);
        const Vector g = player_gradient(G, k, x);
        const Vector proj = G.strategy_sets[k].project(axpy_neg(xk, 1.0, g));
        const double r = dist(xk, proj);
        rep.per_player_residuals.push_back(r);
        if (r > tol) rep.is_equilibrium = false;
    }
    return rep;
}

namespace detail {

inline std::vector<Vector> grid_points_for(const FeasibleSet& X, std::size_t grid_points) {
    if (grid_points < 2)
        throw std::invalid_argument("best_response_grid: need at least 2 grid points");
    if (const auto* box = std::get_if<FeasibleSet::Box>(&X.node())) {
        const std::size_t d = box->lower.size();
        for (std::size_t i = 0; i < d; ++i)
            if (!std::isfinite(box->lower[i]) || !std::isfinite(box->upper[i]))
                throw std::invalid_argument("best_response_grid: box must be bounded");
        std::size_t total = 1;
        for (std::size_t i = 0; i < d; ++i) total *= grid_points;
        std::vector<Vector> pts;
        pts.reserve(total);
        for (std::size_t f = 0; f < total; ++f) {
            Vector p(d);
            std::size_t rem = f;
            for (std::size_t i = d; i-- > 0;) {
                const std::size_t c = rem % grid_points;
                rem /= grid_points;
                const double t = static_cast<double>(c) / static_cast<double>(grid_points - 1);
                p[i] = box->lower[i] + t * (box->upper[i] - box->lower[i]);
            }
            pts.push_back(std::move(p));
        }
        return pts;
    }
    if (const auto* sx = std::get_if<FeasibleSet::Simplex>(&X.node())) {
        // all compositions of (grid_points-1) into n parts, scaled to sum 1
        const std::size_t n = sx->n;
        const std::size_t g = grid_points - 1;
        std::vector<Vector> pts;
        Vector cur(n, 0.0);
        auto rec = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
            if (pos + 1 == n) {
                cur[pos] = static_cast<double>(remaining) / static_cast<double>(g);
                pts.push_back(cur);
                return;
            }
            for (std::size_t c = 0; c <= remaining; ++c) {
                cur[pos] = static_cast<double>(c) / static_cast<double>(g);
                self(self, pos + 1, remaining - c);
            }
        };
        rec(rec, 0, g);
        return pts;
    }
    throw std::invalid_argument("best_response_grid: only Box and Simplex sets supported");
}

}  // namespace detail

// Deterministic grid argmin of player k's cost with opponents fixed; first
// grid point wins ties. Test-oracle quality, not a production optimizer.
inline Vector best_response_grid(const GameSpec& G, std::size_t k, std::span<const double> x,
                                 std::size_t grid_points) {
    if (k >= G.players()) throw std::invalid_argument("best_response_grid: player index out of range");
    const auto candidates = detail::grid_points_for(G.strategy_sets[k], grid_points);

    Vector xmod(x.begin(), x.end());
    const std::size_t off = G.block_offset(k);
    Vector best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& cand : candidates) {
        for (std::size_t i = 0; i < cand.size(); ++i) xmod[off + i] = cand[i];
        const double c = cost(G, k, xmod);
        if (c < best_cost) {
            best_cost = c;
            best = cand;
        }
    }
    return best;
}

}  // namespace tvi
