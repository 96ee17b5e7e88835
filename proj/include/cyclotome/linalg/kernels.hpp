#pragma once

// Sparse elimination kernels. Every parallel kernel has a serial twin with the
// same result; the parallel ones are deterministic for any thread count
// because work is split into fixed batches and merged in input order.

#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cyclotome/linalg/sparse.hpp"

namespace cyclotome {

template <class F>
class Echelon {
public:
    using V = typename F::value_type;
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    Echelon(F f, std::size_t dim) : f_(f), pivot_of_(dim, npos) {}

    std::size_t dim() const noexcept { return pivot_of_.size(); }
    std::size_t rank() const noexcept { return rows_.size(); }
    const std::vector<SparseVec<V>>& rows() const noexcept { return rows_; }
    std::size_t pivot_row(std::size_t col) const { return pivot_of_[col]; }

    // Reduces until the leading index has no pivot (or v vanishes).
    SparseVec<V> reduce_leading(SparseVec<V> v) const {
        while (!v.empty()) {
            std::size_t r = pivot_of_[v.front().index];
            if (r == npos) break;
            v = axpy(f_, v, f_.neg(v.front().value), rows_[r]);
        }
        return v;
    }

    // Eliminates every pivot index from v.
    SparseVec<V> reduce_full(SparseVec<V> v) const {
        std::size_t i = 0;
        while (i < v.size()) {
            std::size_t r = pivot_of_[v[i].index];
            if (r == npos) {
                ++i;
                continue;
            }
            v = axpy(f_, v, f_.neg(v[i].value), rows_[r]);
        }
        return v;
    }

    bool contains(const SparseVec<V>& v) const { return reduce_leading(v).empty(); }

    // Returns true if v was independent of the stored rows.
    bool insert(SparseVec<V> v) { return insert_reduced(reduce_leading(std::move(v))); }

    // Same as insert; cheap when v was already reduced against an earlier state.
    bool insert_reduced(SparseVec<V> v) {
        v = reduce_leading(std::move(v));
        if (v.empty()) return false;
        auto lead_inv = f_.inv(v.front().value);
        if (!(v.front().value == f_.one()))
            for (auto& e : v) e.value = f_.mul(e.value, lead_inv);
        pivot_of_[v.front().index] = rows_.size();
        rows_.push_back(std::move(v));
        return true;
    }

private:
    F f_;
    std::vector<std::size_t> pivot_of_;
    std::vector<SparseVec<V>> rows_;
};

// Column-space echelon of m, one column at a time.
template <class F>
Echelon<F> echelon_serial(const F& f, const SparseMat<typename F::value_type>& m) {
    Echelon<F> e(f, m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.col(j));
    return e;
}

// Batched variant: each batch is reduced against the pivots known before the
// batch in parallel, then merged serially in column order.
template <class F>
Echelon<F> echelon_parallel(const F& f, const SparseMat<typename F::value_type>& m, std::size_t batch = 256) {
    using V = typename F::value_type;
    Echelon<F> e(f, m.rows());
    std::vector<SparseVec<V>> reduced;
    for (std::size_t start = 0; start < m.cols(); start += batch) {
        const std::size_t stop = std::min(m.cols(), start + batch);
        reduced.assign(stop - start, {});
        const long n = static_cast<long>(stop - start);
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < n; ++i) reduced[i] = e.reduce_leading(m.col(start + i));
        for (auto& v : reduced)
            if (!v.empty()) e.insert_reduced(std::move(v));
    }
    return e;
}

template <class F>
std::size_t rank_serial(const F& f, const SparseMat<typename F::value_type>& m) {
    return echelon_serial(f, m).rank();
}

template <class F>
std::size_t rank_parallel(const F& f, const SparseMat<typename F::value_type>& m) {
    return echelon_parallel(f, m).rank();
}

// Rank-preserving reordering that limits fill-in: coordinates are relabelled
// by increasing occurrence count, so a vector's pivot is its rarest entry,
// and the sparsest vectors are inserted first.
template <class V>
SparseMat<V> fill_reducing_order(const SparseMat<V>& m) {
    std::vector<std::size_t> count(m.rows(), 0);
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.col(j)) ++count[e.index];
    std::vector<std::uint32_t> order(m.rows());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return count[a] < count[b]; });
    std::vector<std::uint32_t> label(m.rows());
    for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = static_cast<std::uint32_t>(i);

    std::vector<std::size_t> cols(m.cols());
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    std::stable_sort(cols.begin(), cols.end(), [&](auto a, auto b) { return m.col(a).size() < m.col(b).size(); });
    SparseMat<V> out(m.rows(), m.cols());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto& c = out.col(j);
        for (const auto& e : m.col(cols[j])) c.push_back({label[e.index], e.value});
        std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    }
    return out;
}

template <class F>
std::size_t rank_by_elimination(const F& f, const SparseMat<typename F::value_type>& m) {
    if (m.cols() == 0 || m.rows() == 0) return 0;
    // Eliminate along the shorter side; columns are the inserted vectors.
    if (m.rows() < m.cols() / 4) return rank_parallel(f, fill_reducing_order(transpose(m)));
    return rank_parallel(f, fill_reducing_order(m));
}

// Rank over Q through arithmetic mod 2^61 - 1. Columns independent mod p are
// independent over Q; every dependency found mod p is lifted by rational
// reconstruction and checked exactly, so a returned value is certified.
// Empty when some lift fails.
std::optional<std::size_t> rank_rational_modular(const SparseMat<mpq_class>& m);

// Production entry point.
template <class F>
std::size_t rank_of(const F& f, const SparseMat<typename F::value_type>& m) {
    if constexpr (std::is_same_v<F, Qf>) {
        if (m.cols() == 0 || m.rows() == 0) return 0;
        const auto oriented = m.rows() < m.cols() / 4 ? fill_reducing_order(transpose(m)) : fill_reducing_order(m);
        if (auto r = rank_rational_modular(oriented)) return *r;
        return rank_parallel(f, oriented);
    } else {
        return rank_by_elimination(f, m);
    }
}

// Fills the columns of a matrix with fn(j) in parallel. fn must be pure.
template <class V, class Fn>
SparseMat<V> build_columns_parallel(std::size_t rows, std::size_t cols, Fn&& fn) {
    SparseMat<V> out(rows, cols);
    const long n = static_cast<long>(cols);
#pragma omp parallel for schedule(dynamic, 16)
    for (long j = 0; j < n; ++j) out.col(j) = fn(static_cast<std::size_t>(j));
    return out;
}

template <class V, class Fn>
SparseMat<V> build_columns_serial(std::size_t rows, std::size_t cols, Fn&& fn) {
    SparseMat<V> out(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) out.col(j) = fn(j);
    return out;
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace cyclotome
