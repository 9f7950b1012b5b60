#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "tvi/vec.hpp"

namespace tvi {

// Dense m-way array with per-mode dimensions (r_1,...,r_m), stored row-major
// (last index fastest). Entries are immutable after construction; 0-based
// indices everywhere.
class DenseTensor {
  public:
    explicit DenseTensor(std::vector<std::size_t> dims)
        : dims_(std::move(dims)), entries_(checked_size(dims_), 0.0) {}

    DenseTensor(std::vector<std::size_t> dims, std::vector<double> entries)
        : dims_(std::move(dims)), entries_(std::move(entries)) {
        if (entries_.size() != checked_size(dims_))
            throw std::invalid_argument("DenseTensor: entry count does not match dims");
        if (!all_finite(entries_))
            throw std::invalid_argument("DenseTensor: entries must be finite");
    }

    std::size_t order() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<double>& data() const { return entries_; }

    std::size_t flat_index(std::span<const std::size_t> idx) const {
        if (idx.size() != dims_.size())
            throw std::invalid_argument("DenseTensor: index arity mismatch");
        std::size_t f = 0;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] >= dims_[j])
                throw std::out_of_range("DenseTensor: index out of range");
            f = f * dims_[j] + idx[j];
        }
        return f;
    }

    double operator()(std::span<const std::size_t> idx) const {
        return entries_[flat_index(idx)];
    }
    double operator()(std::initializer_list<std::size_t> idx) const {
        return (*this)(std::span<const std::size_t>(idx.begin(), idx.size()));
    }

    // Decode a flat position into its multi-index (row-major).
    std::vector<std::size_t> unflatten(std::size_t flat) const {
        std::vector<std::size_t> idx(dims_.size());
        for (std::size_t j = dims_.size(); j-- > 0;) {
            idx[j] = flat % dims_[j];
            flat /= dims_[j];
        }
        return idx;
    }

    static DenseTensor from_entries(std::vector<std::size_t> dims,
                                    std::vector<double> entries) {
        return DenseTensor(std::move(dims), std::move(entries));
    }

  private:
    static std::size_t checked_size(const std::vector<std::size_t>& dims) {
        if (dims.empty()) throw std::invalid_argument("DenseTensor: order must be >= 1");
        std::size_t s = 1;
        for (std::size_t d : dims) {
            if (d == 0) throw std::invalid_argument("DenseTensor: zero dimension");
            s *= d;
        }
        return s;
    }

    std::vector<std::size_t> dims_;
    std::vector<double> entries_;
};

// m-order n-dimensional tensor (all modes equal).
class SquareTensor {
  public:
    explicit SquareTensor(DenseTensor t) : t_(std::move(t)) {
        const auto& d = t_.dims();
        for (std::size_t r : d)
            if (r != d[0])
                throw std::invalid_argument("SquareTensor: dims must be uniform");
        if (t_.order() < 2)
            throw std::invalid_argument("SquareTensor: order must be >= 2");
    }

    SquareTensor(std::size_t order, std::size_t n, std::vector<double> entries)
        : SquareTensor(DenseTensor(std::vector<std::size_t>(order, n), std::move(entries))) {}

    std::size_t order() const { return t_.order(); }
    std::size_t dim() const { return t_.dims()[0]; }
    const DenseTensor& tensor() const { return t_; }
    const std::vector<double>& data() const { return t_.data(); }

    static SquareTensor zeros(std::size_t order, std::size_t n) {
        return SquareTensor(DenseTensor(std::vector<std::size_t>(order, n)));
    }

    // Order-2 identity.
    static SquareTensor identity(std::size_t n) {
        std::vector<double> e(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
        return SquareTensor(2, n, std::move(e));
    }

  private:
    DenseTensor t_;
};

// (A x^{m-1})_i = sum_{i_2..i_m} a_{i i_2..i_m} x_{i_2}...x_{i_m}.
// Accumulates in flat row-major order, so the summation order is fixed.
inline Vector apply_power(const SquareTensor& A, std::span<const double> x) {
    const std::size_t n = A.dim();
    const std::size_t m = A.order();
    if (x.size() != n) throw std::invalid_argument("apply_power: dimension mismatch");
    if (!all_finite(x)) throw std::invalid_argument("apply_power: x must be finite");

    const auto& a = A.data();
    Vector out(n, 0.0);
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t f = 0; f < a.size(); ++f) {
        double term = a[f];
        if (term != 0.0) {
            for (std::size_t j = 1; j < m; ++j) term *= x[idx[j]];
            out[idx[0]] += term;
        }
        // odometer increment, last index fastest
        for (std::size_t j = m; j-- > 0;) {
            if (++idx[j] < n) break;
            idx[j] = 0;
        }
    }
    return out;
}

// A x^m = <x, A x^{m-1}>, the degree-m homogeneous form.
inline double form_value(const SquareTensor& A, std::span<const double> x) {
    return dot(x, apply_power(A, x));
}

// (B u^2 ... u^m)_{i_1} = sum b_{i_1 i_2..i_m} u^2_{i_2}...u^m_{i_m}
// for a general (possibly non-square) tensor B.
inline Vector contract_trailing(const DenseTensor& B,
                                const std::vector<Vector>& trailing) {
    const std::size_t m = B.order();
    if (trailing.size() != m - 1)
        throw std::invalid_argument("contract_trailing: expected m-1 vectors");
    for (std::size_t k = 1; k < m; ++k)
        if (trailing[k - 1].size() != B.dims()[k])
            throw std::invalid_argument("contract_trailing: vector length mismatch");

    const auto& b = B.data();
    Vector out(B.dims()[0], 0.0);
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t f = 0; f < b.size(); ++f) {
        double term = b[f];
        if (term != 0.0) {
            for (std::size_t j = 1; j < m; ++j) term *= trailing[j - 1][idx[j]];
            out[idx[0]] += term;
        }
        for (std::size_t j = m; j-- > 0;) {
            if (++idx[j] < B.dims()[j]) break;
            idx[j] = 0;
        }
    }
    return out;
}

namespace detail {
inline void check_symmetrize_order(std::size_t m) {
    if (m > 8)
        throw std::invalid_argument(
            "symmetrize/is_symmetric: order > 8 not supported (m! permutations)");
}
}  // namespace detail

// Average over all m! index permutations.
inline SquareTensor symmetrize(const SquareTensor& A) {
    const std::size_t m = A.order();
    const std::size_t n = A.dim();
    detail::check_symmetrize_order(m);

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t nperm = 1;
    for (std::size_t j = 2; j <= m; ++j) nperm *= j;

    const DenseTensor& src = A.tensor();
    std::vector<double> out(src.size(), 0.0);
    std::vector<std::size_t> pidx(m);
    for (std::size_t f = 0; f < out.size(); ++f) {
        const auto idx = src.unflatten(f);
        double acc = 0.0;
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (std::size_t j = 0; j < m; ++j) pidx[j] = idx[perm[j]];
            acc += src(pidx);
        } while (std::next_permutation(perm.begin(), perm.end()));
        out[f] = acc / static_cast<double>(nperm);
    }
    return SquareTensor(m, n, std::move(out));
}

inline bool is_symmetric(const SquareTensor& A, double tol) {
    if (tol < 0) throw std::invalid_argument("is_symmetric: tol must be >= 0");
    const std::size_t m = A.order();
    detail::check_symmetrize_order(m);

    const DenseTensor& src = A.tensor();
    std::vector<std::size_t> perm(m), pidx(m);
    for (std::size_t f = 0; f < src.size(); ++f) {
        const auto idx = src.unflatten(f);
        double lo = src(idx), hi = lo;
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (std::size_t j = 0; j < m; ++j) pidx[j] = idx[perm[j]];
            const double v = src(pidx);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (hi - lo > tol) return false;
    }
    return true;
}

}  // namespace tvi
