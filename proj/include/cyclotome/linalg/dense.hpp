#pragma once

// Dense exact linear algebra for the small explicit computations (spectral
// pages, Tate maps, Cartier maps). Large rank computations use kernels.hpp.

#include <cstddef>
#include <utility>
#include <vector>

#include "cyclotome/linalg/error.hpp"
#include "cyclotome/linalg/sparse.hpp"

namespace cyclotome {

template <class V>
using DenseVec = std::vector<V>;

template <class V>
class DenseMat {
public:
    DenseMat() = default;
    DenseMat(std::size_t rows, std::size_t cols, const V& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    V& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const V& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    DenseVec<V> row(std::size_t i) const {
        return DenseVec<V>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    DenseVec<V> column(std::size_t j) const {
        DenseVec<V> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend bool operator==(const DenseMat& x, const DenseMat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<V> data_;
};

template <class F>
DenseMat<typename F::value_type> densify(const F& f, const SparseMat<typename F::value_type>& m) {
    DenseMat<typename F::value_type> d(m.rows(), m.cols(), f.zero());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.col(j)) d(e.index, j) = e.value;
    return d;
}

template <class F>
SparseVec<typename F::value_type> sparsify(const F& f, const DenseVec<typename F::value_type>& v) {
    SparseVec<typename F::value_type> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!F::is_zero(v[i])) out.push_back({static_cast<std::uint32_t>(i), v[i]});
    (void)f;
    return out;
}

template <class F>
DenseVec<typename F::value_type> densify_vec(const F& f, const SparseVec<typename F::value_type>& v, std::size_t n) {
    DenseVec<typename F::value_type> out(n, f.zero());
    for (const auto& e : v) out[e.index] = e.value;
    return out;
}

// In-place reduced row echelon form; returns the pivot column of each nonzero row.
template <class F>
std::vector<std::size_t> rref(const F& f, DenseMat<typename F::value_type>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && F::is_zero(m(piv, c))) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(r, piv);
        auto inv = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || F::is_zero(m(i, c))) continue;
            auto factor = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
std::size_t dense_rank(const F& f, DenseMat<typename F::value_type> m) {
    return rref(f, m).size();
}

// Rows of the result form an RREF basis of ker m.
template <class F>
DenseMat<typename F::value_type> kernel_basis(const F& f, DenseMat<typename F::value_type> m) {
    auto pivots = rref(f, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    DenseMat<typename F::value_type> k(free_cols.size(), m.cols(), f.zero());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        k(t, free_cols[t]) = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) k(t, pivots[r]) = f.neg(m(r, free_cols[t]));
    }
    rref(f, k);
    return k;
}

// Rows of the result form an RREF basis of the column space of m.
template <class F>
DenseMat<typename F::value_type> image_basis(const F& f, const DenseMat<typename F::value_type>& m) {
    DenseMat<typename F::value_type> t(m.cols(), m.rows(), f.zero());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    auto piv = rref(f, t);
    DenseMat<typename F::value_type> out(piv.size(), m.rows(), f.zero());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) = t(i, j);
    return out;
}

template <class F>
DenseVec<typename F::value_type> mat_vec(const F& f, const DenseMat<typename F::value_type>& m,
                                         const DenseVec<typename F::value_type>& v) {
    DenseVec<typename F::value_type> out(m.rows(), f.zero());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!F::is_zero(v[j]) && !F::is_zero(m(i, j))) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
    return out;
}

template <class F>
DenseVec<typename F::value_type> mat_vec(const F& f, const SparseMat<typename F::value_type>& m,
                                         const DenseVec<typename F::value_type>& v) {
    DenseVec<typename F::value_type> out(m.rows(), f.zero());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (F::is_zero(v[j])) continue;
        for (const auto& e : m.col(j)) out[e.index] = f.add(out[e.index], f.mul(e.value, v[j]));
    }
    return out;
}

// Incrementally maintained subspace with an RREF basis.
template <class F>
class Subspace {
public:
    using V = typename F::value_type;

    Subspace(F f, std::size_t ambient) : f_(f), ambient_(ambient) {}

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<DenseVec<V>>& basis() const noexcept { return basis_; }

    DenseVec<V> reduce(DenseVec<V> v) const {
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            const auto c = pivots_[r];
            if (F::is_zero(v[c])) continue;
            auto factor = v[c];
            for (std::size_t j = c; j < ambient_; ++j)
                if (!F::is_zero(basis_[r][j])) v[j] = f_.sub(v[j], f_.mul(factor, basis_[r][j]));
        }
        return v;
    }

    bool contains(const DenseVec<V>& v) const {
        auto r = reduce(v);
        for (const auto& x : r)
            if (!F::is_zero(x)) return false;
        return true;
    }

    bool add(const DenseVec<V>& v) {
        auto r = reduce(v);
        std::size_t c = 0;
        while (c < ambient_ && F::is_zero(r[c])) ++c;
        if (c == ambient_) return false;
        auto inv = f_.inv(r[c]);
        for (auto& x : r) x = f_.mul(x, inv);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (F::is_zero(basis_[i][c])) continue;
            auto factor = basis_[i][c];
            for (std::size_t j = 0; j < ambient_; ++j) basis_[i][j] = f_.sub(basis_[i][j], f_.mul(factor, r[j]));
        }
        // keep rows ordered by pivot
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < c) ++pos;
        pivots_.insert(pivots_.begin() + static_cast<long>(pos), c);
        basis_.insert(basis_.begin() + static_cast<long>(pos), std::move(r));
        return true;
    }

private:
    F f_;
    std::size_t ambient_;
    std::vector<DenseVec<V>> basis_;
    std::vector<std::size_t> pivots_;
};

// W / B for B ⊆ W ⊆ F^n, with W spanned by `gens` (together with B).
// Representatives are chosen greedily from the generators in order.
template <class F>
class Quotient {
public:
    using V = typename F::value_type;

    Quotient(F f, std::size_t ambient, const std::vector<DenseVec<V>>& sub_gens, const std::vector<DenseVec<V>>& gens)
        : f_(f), ambient_(ambient) {
        for (const auto& b : sub_gens) insert(b, {});
        for (const auto& g : gens) {
            auto [res, tag] = reduce_tagged(g);
            if (is_zero_vec(res)) continue;
            reps_.push_back(g);
            // the residual equals g minus earlier rows; tag it as the new class
            DenseVec<V> t = tag_neg(tag);
            t.push_back(f_.one());
            for (auto& row : rows_) row.tag.resize(reps_.size(), f_.zero());
            insert_row(std::move(res), std::move(t));
        }
        for (auto& row : rows_) row.tag.resize(reps_.size(), f_.zero());
    }

    std::size_t dim() const noexcept { return reps_.size(); }
    std::size_t ambient() const noexcept { return ambient_; }
    const std::vector<DenseVec<V>>& representatives() const noexcept { return reps_; }

    bool in_sub(const DenseVec<V>& v) const {
        auto [res, tag] = reduce_tagged(v);
        if (!is_zero_vec(res)) return false;
        for (const auto& x : tag)
            if (!F::is_zero(x)) return false;
        return true;
    }

    // Coordinates of the class of v in terms of the representatives; v must lie in W.
    DenseVec<V> coords(const DenseVec<V>& v) const {
        auto [res, tag] = reduce_tagged(v);
        require(is_zero_vec(res), ErrorKind::Internal, "quotient: vector outside the ambient subspace");
        tag.resize(reps_.size(), f_.zero());
        return tag;
    }

    bool contains(const DenseVec<V>& v) const { return is_zero_vec(reduce_tagged(v).first); }

private:
    struct Row {
        DenseVec<V> vec;
        DenseVec<V> tag;
        std::size_t pivot;
    };

    bool is_zero_vec(const DenseVec<V>& v) const {
        for (const auto& x : v)
            if (!F::is_zero(x)) return false;
        return true;
    }

    DenseVec<V> tag_neg(const DenseVec<V>& t) const {
        DenseVec<V> out(reps_.size() - 1, f_.zero());
        for (std::size_t i = 0; i < t.size() && i < out.size(); ++i) out[i] = f_.neg(t[i]);
        return out;
    }

    // Returns (residual, tag) with v = residual + Σ c_r row_r and tag = Σ c_r tag_r.
    std::pair<DenseVec<V>, DenseVec<V>> reduce_tagged(DenseVec<V> v) const {
        DenseVec<V> tag(reps_.size(), f_.zero());
        for (const auto& row : rows_) {
            if (F::is_zero(v[row.pivot])) continue;
            auto c = v[row.pivot];
            for (std::size_t j = row.pivot; j < ambient_; ++j)
                if (!F::is_zero(row.vec[j])) v[j] = f_.sub(v[j], f_.mul(c, row.vec[j]));
            for (std::size_t j = 0; j < row.tag.size() && j < tag.size(); ++j)
                if (!F::is_zero(row.tag[j])) tag[j] = f_.add(tag[j], f_.mul(c, row.tag[j]));
        }
        return {std::move(v), std::move(tag)};
    }

    void insert(const DenseVec<V>& v, DenseVec<V> tag) {
        auto [res, t] = reduce_tagged(v);
        if (is_zero_vec(res)) return;
        (void)t;
        tag.assign(reps_.size(), f_.zero());
        insert_row(std::move(res), std::move(tag));
    }

    // Rows are kept sorted by pivot and fully reduced against each other, so a
    // single ordered pass in reduce_tagged eliminates every pivot.
    void insert_row(DenseVec<V> vec, DenseVec<V> tag) {
        std::size_t c = 0;
        while (F::is_zero(vec[c])) ++c;
        auto inv = f_.inv(vec[c]);
        for (auto& x : vec) x = f_.mul(x, inv);
        for (auto& x : tag) x = f_.mul(x, inv);
        for (auto& row : rows_) {
            if (F::is_zero(row.vec[c])) continue;
            auto factor = row.vec[c];
            for (std::size_t j = 0; j < ambient_; ++j) row.vec[j] = f_.sub(row.vec[j], f_.mul(factor, vec[j]));
            row.tag.resize(std::max(row.tag.size(), tag.size()), f_.zero());
            for (std::size_t j = 0; j < tag.size(); ++j) row.tag[j] = f_.sub(row.tag[j], f_.mul(factor, tag[j]));
        }
        std::size_t pos = 0;
        while (pos < rows_.size() && rows_[pos].pivot < c) ++pos;
        rows_.insert(rows_.begin() + static_cast<long>(pos), Row{std::move(vec), std::move(tag), c});
    }

    F f_;
    std::size_t ambient_;
    std::vector<Row> rows_;
    std::vector<DenseVec<V>> reps_;
};

}  // namespace cyclotome
