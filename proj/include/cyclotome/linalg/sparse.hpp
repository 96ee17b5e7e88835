#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <tuple>
#include <vector>

#include "cyclotome/linalg/fields.hpp"
#include "cyclotome/linalg/ring.hpp"

namespace cyclotome {

template <class V>
struct Entry {
    std::uint32_t index;
    V value;

    friend bool operator==(const Entry& a, const Entry& b) { return a.index == b.index && a.value == b.value; }
};

// Sorted by index, no stored zeros.
template <class V>
using SparseVec = std::vector<Entry<V>>;

// Column-compressed sparse matrix.
template <class V>
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }
    const SparseVec<V>& col(std::size_t j) const { return columns_[j]; }
    SparseVec<V>& col(std::size_t j) { return columns_[j]; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }
    bool is_zero() const {
        for (const auto& c : columns_)
            if (!c.empty()) return false;
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::vector<SparseVec<V>> columns_;
};

using SparseMatrix = SparseMat<Scalar>;

struct Triplet {
    std::size_t row;
    std::size_t col;
    Scalar value;
};

// Builds a matrix over `ring`; duplicate positions are summed, zeros dropped.
SparseMatrix sparse_from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries,
                                  const Ring& ring);
// Row-major sorted entry list.
std::vector<Triplet> sparse_triplets(const SparseMatrix& m);
SparseMatrix sparse_identity(std::size_t n);
Scalar sparse_at(const SparseMatrix& m, std::size_t row, std::size_t col);

// --- generic helpers over an arithmetic policy ---

// Sorts, merges duplicate indices and drops zeros.
template <class F>
void canonicalize(const F& f, SparseVec<typename F::value_type>& v) {
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        auto idx = v[i].index;
        auto acc = v[i].value;
        std::size_t j = i + 1;
        for (; j < v.size() && v[j].index == idx; ++j) acc = f.add(acc, v[j].value);
        if (!F::is_zero(acc)) v[out++] = {idx, std::move(acc)};
        i = j;
    }
    v.resize(out);
}

// y + a*x, both sorted.
template <class F>
SparseVec<typename F::value_type> axpy(const F& f, const SparseVec<typename F::value_type>& y,
                                       const typename F::value_type& a,
                                       const SparseVec<typename F::value_type>& x) {
    SparseVec<typename F::value_type> out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].index < y[i].index) {
            auto v = f.mul(a, x[j].value);
            if (!F::is_zero(v)) out.push_back({x[j].index, std::move(v)});
            ++j;
        } else {
            auto v = f.add(y[i].value, f.mul(a, x[j].value));
            if (!F::is_zero(v)) out.push_back({y[i].index, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

template <class F>
SparseMat<typename F::value_type> convert(const F& f, const SparseMatrix& m) {
    SparseMat<typename F::value_type> out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto& c = out.col(j);
        for (const auto& e : m.col(j)) {
            auto v = f.from_scalar(e.value);
            if (!F::is_zero(v)) c.push_back({e.index, std::move(v)});
        }
    }
    return out;
}

template <class F>
SparseMatrix to_scalar_matrix(const F& f, const SparseMat<typename F::value_type>& m) {
    SparseMatrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.col(j)) out.col(j).push_back({e.index, f.to_scalar(e.value)});
    return out;
}

// Matrix product a*b.
template <class F>
SparseMat<typename F::value_type> multiply(const F& f, const SparseMat<typename F::value_type>& a,
                                           const SparseMat<typename F::value_type>& b) {
    SparseMat<typename F::value_type> out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        SparseVec<typename F::value_type> acc;
        for (const auto& e : b.col(j))
            for (const auto& t : a.col(e.index)) acc.push_back({t.index, f.mul(e.value, t.value)});
        canonicalize(f, acc);
        out.col(j) = std::move(acc);
    }
    return out;
}

// a + s*b.
template <class F>
SparseMat<typename F::value_type> add_scaled(const F& f, const SparseMat<typename F::value_type>& a,
                                             const typename F::value_type& s,
                                             const SparseMat<typename F::value_type>& b) {
    SparseMat<typename F::value_type> out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) out.col(j) = axpy(f, a.col(j), s, b.col(j));
    return out;
}

template <class V>
SparseMat<V> transpose(const SparseMat<V>& m) {
    SparseMat<V> out(m.cols(), m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.col(j)) out.col(e.index).push_back({static_cast<std::uint32_t>(j), e.value});
    return out;
}

template <class F>
bool equal(const F&, const SparseMat<typename F::value_type>& a, const SparseMat<typename F::value_type>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        const auto& x = a.col(j);
        const auto& y = b.col(j);
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].index != y[i].index || !(x[i].value == y[i].value)) return false;
    }
    return true;
}

// One block of a block matrix; `sign` = -1 negates.
template <class V>
struct Block {
    std::size_t block_row;
    std::size_t block_col;
    const SparseMat<V>* matrix;
    int sign = 1;
};

template <class F>
SparseMat<typename F::value_type> assemble_blocks(const F& f, const std::vector<std::size_t>& row_sizes,
                                                  const std::vector<std::size_t>& col_sizes,
                                                  const std::vector<Block<typename F::value_type>>& blocks) {
    std::vector<std::size_t> row_off(row_sizes.size() + 1, 0), col_off(col_sizes.size() + 1, 0);
    for (std::size_t i = 0; i < row_sizes.size(); ++i) row_off[i + 1] = row_off[i] + row_sizes[i];
    for (std::size_t i = 0; i < col_sizes.size(); ++i) col_off[i + 1] = col_off[i] + col_sizes[i];
    SparseMat<typename F::value_type> out(row_off.back(), col_off.back());
    for (const auto& b : blocks) {
        const auto& m = *b.matrix;
        if (m.rows() != row_sizes[b.block_row] || m.cols() != col_sizes[b.block_col])
            fail(ErrorKind::Internal, "block size mismatch");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto& c = out.col(col_off[b.block_col] + j);
            for (const auto& e : m.col(j))
                c.push_back({static_cast<std::uint32_t>(row_off[b.block_row] + e.index),
                             b.sign < 0 ? f.neg(e.value) : e.value});
        }
    }
    for (std::size_t j = 0; j < out.cols(); ++j) canonicalize(f, out.col(j));
    return out;
}

}  // namespace cyclotome
