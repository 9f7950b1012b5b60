#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "tvi/vec.hpp"

namespace tvi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Default membership tolerance for contains/contains_origin.
inline constexpr double kDefaultSetTol = 1e-9;

struct Halfspace {
    Vector normal;  // a
    double offset;  // b, meaning a^T x <= b
};

// Closed convex feasible set with an exact (or iteratively-exact for
// polyhedra) Euclidean projection. Immutable; all operations are pure.
class FeasibleSet {
  public:
    struct WholeSpace {
        std::size_t n;
    };
    struct Box {
        Vector lower, upper;  // entries may be +/-infinity
    };
    struct Ball {
        Vector center;
        double radius;
    };
    struct Simplex {
        std::size_t n;  // {x >= 0, sum x_i = 1}
    };
    struct Polyhedron {
        std::size_t n;
        std::vector<Halfspace> halfspaces;
        std::size_t max_sweeps = 10000;
        double change_tol = 1e-10;
    };
    struct Product {
        std::vector<FeasibleSet> factors;
    };
    using Node = std::variant<WholeSpace, Box, Ball, Simplex, Polyhedron, Product>;

    static FeasibleSet whole_space(std::size_t n) {
        require_dim(n);
        return FeasibleSet(WholeSpace{n});
    }

    static FeasibleSet box(Vector lower, Vector upper) {
        if (lower.size() != upper.size() || lower.empty())
            throw std::invalid_argument("Box: bound dimension mismatch");
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i])
                throw std::invalid_argument("Box: requires lower <= upper componentwise");
            if (lower[i] == kInf || upper[i] == -kInf)
                throw std::invalid_argument("Box: empty coordinate range");
        }
        return FeasibleSet(Box{std::move(lower), std::move(upper)});
    }

    static FeasibleSet nonnegative_orthant(std::size_t n) {
        return box(Vector(n, 0.0), Vector(n, kInf));
    }

    static FeasibleSet ball(Vector center, double radius) {
        if (center.empty()) throw std::invalid_argument("Ball: empty center");
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw std::invalid_argument("Ball: radius must be positive");
        return FeasibleSet(Ball{std::move(center), radius});
    }

    static FeasibleSet simplex(std::size_t n) {
        require_dim(n);
        return FeasibleSet(Simplex{n});
    }

    static FeasibleSet polyhedron(std::size_t n, std::vector<Halfspace> halfspaces) {
        require_dim(n);
        for (const auto& h : halfspaces) {
            if (h.normal.size() != n)
                throw std::invalid_argument("Polyhedron: halfspace normal dimension mismatch");
            if (norm2(h.normal) == 0.0)
                throw std::invalid_argument("Polyhedron: zero normal");
        }
        return FeasibleSet(Polyhedron{n, std::move(halfspaces)});
    }

    static FeasibleSet product(std::vector<FeasibleSet> factors) {
        if (factors.empty()) throw std::invalid_argument("Product: no factors");
        return FeasibleSet(Product{std::move(factors)});
    }

    std::size_t dim() const {
        return std::visit(
            [](const auto& node) -> std::size_t {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, WholeSpace>) return node.n;
                else if constexpr (std::is_same_v<T, Box>) return node.lower.size();
                else if constexpr (std::is_same_v<T, Ball>) return node.center.size();
                else if constexpr (std::is_same_v<T, Simplex>) return node.n;
                else if constexpr (std::is_same_v<T, Polyhedron>) return node.n;
                else {
                    std::size_t s = 0;
                    for (const auto& f : node.factors) s += f.dim();
                    return s;
                }
            },
            *node_);
    }

    // argmin_{y in X} ||y - z||_2
    Vector project(std::span<const double> z) const {
        if (z.size() != dim())
            throw std::invalid_argument("project: dimension mismatch");
        return std::visit([&](const auto& node) { return project_node(node, z); }, *node_);
    }

    bool contains(std::span<const double> z, double tol) const {
        return dist(project(z), z) <= tol;
    }

    bool contains_origin() const {
        return contains(Vector(dim(), 0.0), kDefaultSetTol);
    }

    const Node& node() const { return *node_; }

  private:
    explicit FeasibleSet(Node node) : node_(std::make_shared<Node>(std::move(node))) {}

    static void require_dim(std::size_t n) {
        if (n == 0) throw std::invalid_argument("FeasibleSet: dimension must be positive");
    }

    static Vector project_node(const WholeSpace&, std::span<const double> z) {
        return Vector(z.begin(), z.end());
    }

    static Vector project_node(const Box& b, std::span<const double> z) {
        Vector y(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            y[i] = std::min(std::max(z[i], b.lower[i]), b.upper[i]);
        return y;
    }

    static Vector project_node(const Ball& b, std::span<const double> z) {
        Vector d = sub(z, b.center);
        const double r = norm2(d);
        if (r <= b.radius) return Vector(z.begin(), z.end());
        return add(b.center, scaled(d, b.radius / r));
    }

    // Sort-and-threshold projection onto the unit simplex.
    static Vector project_node(const Simplex& s, std::span<const double> z) {
        Vector u(z.begin(), z.end());
        std::sort(u.begin(), u.end(), std::greater<>());
        double cumsum = 0.0, tau = 0.0;
        std::size_t rho = 0;
        for (std::size_t j = 0; j < s.n; ++j) {
            cumsum += u[j];
            const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
            if (u[j] - t > 0.0) {
                rho = j + 1;
                tau = t;
            }
        }
        Vector y(s.n);
        (void)rho;
        for (std::size_t i = 0; i < s.n; ++i) y[i] = std::max(z[i] - tau, 0.0);
        return y;
    }

    // Dykstra's alternating projections over the halfspaces.
    static Vector project_node(const Polyhedron& p, std::span<const double> z) {
        if (p.halfspaces.empty()) return Vector(z.begin(), z.end());
        const std::size_t k = p.halfspaces.size();
        Vector x(z.begin(), z.end());
        std::vector<Vector> corrections(k, Vector(p.n, 0.0));
        for (std::size_t sweep = 0; sweep < p.max_sweeps; ++sweep) {
            double change = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                Vector w = add(x, corrections[i]);
                Vector xnew = project_halfspace(p.halfspaces[i], w);
                corrections[i] = sub(w, xnew);
                change = std::max(change, dist(x, xnew));
                x = std::move(xnew);
            }
            if (change <= p.change_tol) return x;
        }
        throw std::runtime_error(
            "Polyhedron projection: Dykstra did not converge within iteration budget");
    }

    static Vector project_halfspace(const Halfspace& h, std::span<const double> w) {
        const double viol = dot(h.normal, w) - h.offset;
        if (viol <= 0.0) return Vector(w.begin(), w.end());
        const double nn = dot(h.normal, h.normal);
        return axpy_neg(w, viol / nn, h.normal);
    }

    static Vector project_node(const Product& p, std::span<const double> z) {
        Vector y;
        y.reserve(z.size());
        std::size_t off = 0;
        for (const auto& f : p.factors) {
            const std::size_t d = f.dim();
            Vector yi = f.project(z.subspan(off, d));
            y.insert(y.end(), yi.begin(), yi.end());
            off += d;
        }
        return y;
    }

    std::shared_ptr<const Node> node_;
};

}  // namespace tvi
