#pragma once

// Hochschild chain spaces A^{(q+1)} restricted to cyclically composable
// tuples over the algebra's idempotent family, with the standard operators.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "cyclotome/algebra/algebra.hpp"
#include "cyclotome/linalg/error.hpp"
#include "cyclotome/linalg/kernels.hpp"

namespace cyclotome {

// 200000 unless CYCLOTOME_MAX_CELL holds a positive integer.
std::size_t default_max_cell();

struct ChainOptions {
    bool normalized = true;
    bool relative = true;  // reduce over the idempotent family
    std::size_t max_cell = default_max_cell();
};

// Part of the chain spaces seen by one computation; -1 = no restriction.
struct Split {
    int weight = -1;
    int sector = -1;  // conjugacy class index of the product of group degrees
    friend auto operator<=>(const Split&, const Split&) = default;
};

struct ChainSpace {
    int q = 0;
    std::vector<std::uint32_t> data;  // tuples of length q + 1, lexicographically sorted

    std::size_t size() const { return data.size() / static_cast<std::size_t>(q + 1); }
    const std::uint32_t* tuple(std::size_t i) const { return data.data() + i * static_cast<std::size_t>(q + 1); }
    long find(const std::uint32_t* t) const {
        const std::size_t len = static_cast<std::size_t>(q) + 1;
        std::size_t lo = 0, hi = size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            const std::uint32_t* m = tuple(mid);
            if (std::lexicographical_compare(m, m + len, t, t + len)) lo = mid + 1;
            else hi = mid;
        }
        if (lo < size() && std::equal(t, t + len, tuple(lo))) return static_cast<long>(lo);
        return -1;
    }
};

// Copy usable by ChainOperators: the unit becomes a basis vector unless a
// relative computation can use the idempotent family.
Algebra chain_ready(const Algebra& a, bool relative = true);

template <class F>
class ChainOperators {
public:
    using V = typename F::value_type;
    using Mat = SparseMat<V>;

    ChainOperators(F f, const Algebra& a, Split split, ChainOptions opt)
        : f_(f), a_(a), split_(split), opt_(opt), mult_(mult_table(f, a)) {
        const std::size_t n = a.dim();
        if (opt.relative) {
            require(!a.idempotents.empty(), ErrorKind::Internal, "chain operators need an idempotent family");
            idem_ = a.idempotents;
            left_ = a.idem_left;
            right_ = a.idem_right;
        } else {
            auto u = a.unit_index();
            require(u.has_value(), ErrorKind::Internal, "chain operators need the unit as a basis vector");
            idem_ = {*u};
            left_.assign(n, 0);
            right_.assign(n, 0);
        }
        in_s_.assign(n, 0);
        for (auto s : idem_) in_s_[s] = 1;
        for (std::size_t b = 0; b < n; ++b) {
            weight_.push_back(a.degree(b));
            odd_.push_back(a.sign_degree(b) % 2 != 0 ? 1 : 0);
            max_weight_ = std::max(max_weight_, a.degree(b));
        }
        if (a.sectors && split.sector >= 0) group_ = &a.sectors->group;
        by_left_.assign(idem_.size(), {});
        for (std::size_t b = 0; b < n; ++b)
            if (!(opt.normalized && in_s_[b])) by_left_[left_[b]].push_back(static_cast<std::uint32_t>(b));
        if (a.differential) {
            diff_.resize(n);
            for (std::size_t b = 0; b < n; ++b)
                for (const auto& e : a.differential->col(b)) {
                    auto v = f.from_scalar(e.value);
                    if (!F::is_zero(v)) diff_[b].push_back({e.index, v});
                }
        }
    }

    const F& field() const { return f_; }
    const Algebra& algebra() const { return a_; }
    const Split& split() const { return split_; }
    bool dg() const { return a_.differential.has_value(); }
    bool normalized() const { return opt_.normalized; }
    int max_weight() const { return max_weight_; }

    // Weight filter: -1 = none. For DG algebras callers pass exact weights.
    const ChainSpace& space(int q, int w) {
        auto key = std::make_pair(q, w);
        auto it = spaces_.find(key);
        if (it != spaces_.end()) return *it->second;
        auto s = std::make_unique<ChainSpace>(enumerate(q, w));
        return *spaces_.emplace(key, std::move(s)).first->second;
    }
    std::size_t dim(int q, int w) { return q < 0 ? 0 : space(q, w).size(); }

    // C_q -> C_{q-1}
    const Mat& b(int q, int w) { return cached('b', q, w, [&] { return faces(q, w, true); }); }
    const Mat& bprime(int q, int w) { return cached('p', q, w, [&] { return faces(q, w, false); }); }
    // C_q -> C_q
    const Mat& t(int q, int w) { return cached('t', q, w, [&] { return rotation(q, w); }); }
    const Mat& norm(int q, int w) { return cached('N', q, w, [&] { return norm_map(q, w); }); }
    const Mat& one_minus_t(int q, int w) {
        return cached('1', q, w, [&] { return add_scaled(f_, identity(dim(q, w)), f_.neg(f_.one()), t(q, w)); });
    }
    // C_q -> C_{q+1}, normalized Connes operator
    const Mat& connes_B(int q, int w) { return cached('B', q, w, [&] { return connes(q, w); }); }
    // C_{q,w} -> C_{q,w-1}
    const Mat& delta(int q, int w) { return cached('d', q, w, [&] { return internal(q, w); }); }

private:
    F f_;
    const Algebra& a_;
    Split split_;
    ChainOptions opt_;
    MultTable<F> mult_;
    std::vector<std::uint32_t> idem_;
    std::vector<int> left_, right_;
    std::vector<char> in_s_, odd_;
    std::vector<int> weight_;
    int max_weight_ = 0;
    const GroupTable* group_ = nullptr;
    std::vector<std::vector<std::uint32_t>> by_left_;
    std::vector<SparseVec<V>> diff_;
    std::map<std::pair<int, int>, std::unique_ptr<ChainSpace>> spaces_;
    std::map<std::tuple<char, int, int>, std::unique_ptr<Mat>> ops_;

    template <class Build>
    const Mat& cached(char op, int q, int w, Build&& build) {
        auto key = std::make_tuple(op, q, w);
        auto it = ops_.find(key);
        if (it != ops_.end()) return *it->second;
        auto m = std::make_unique<Mat>(build());
        return *ops_.emplace(key, std::move(m)).first->second;
    }

    Mat identity(std::size_t n) const {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.col(i).push_back({static_cast<std::uint32_t>(i), f_.one()});
        return m;
    }

    ChainSpace enumerate(int q, int w) {
        ChainSpace s;
        s.q = q;
        if (q < 0) return s;
        const int len = q + 1;
        const std::size_t n = a_.dim();
        std::vector<std::uint32_t> t(len);
        std::vector<int> gprod(len + 1, 0);
        const int sector = group_ ? split_.sector : -1;
        auto rec = [&](auto&& self, int slot, int wsum) -> void {
            if (slot == len) {
                if (right_[t[q]] != left_[t[0]]) return;
                if (w >= 0 && wsum != w) return;
                if (sector >= 0 && group_->class_of(gprod[len]) != sector) return;
                s.data.insert(s.data.end(), t.begin(), t.end());
                if (s.data.size() / len > opt_.max_cell)
                    fail(ErrorKind::Resource, "chain space C_" + std::to_string(q) + " exceeds the cell bound " +
                                                  std::to_string(opt_.max_cell));
                return;
            }
            auto visit = [&](std::uint32_t c) {
                const int nw = wsum + weight_[c];
                if (w >= 0 && (nw > w || nw + (len - slot - 1) * max_weight_ < w)) return;
                t[slot] = c;
                if (sector >= 0) gprod[slot + 1] = group_->mul(gprod[slot], a_.sectors->degree[c]);
                self(self, slot + 1, nw);
            };
            if (slot == 0) {
                for (std::uint32_t c = 0; c < n; ++c) visit(c);
            } else {
                for (std::uint32_t c : by_left_[right_[t[slot - 1]]]) visit(c);
            }
        };
        if (sector >= 0) gprod[0] = group_->identity();
        rec(rec, 0, 0);
        return s;
    }

    bool degenerate(const std::vector<std::uint32_t>& t) const {
        if (!opt_.normalized) return false;
        for (std::size_t i = 1; i < t.size(); ++i)
            if (in_s_[t[i]]) return true;
        return false;
    }

    void emit(SparseVec<V>& out, const ChainSpace& target, const std::vector<std::uint32_t>& t, const V& c) const {
        if (F::is_zero(c) || degenerate(t)) return;
        const long k = target.find(t.data());
        if (k < 0) fail(ErrorKind::Internal, "chain term missing from target basis");
        out.push_back({static_cast<std::uint32_t>(k), c});
    }

    V sign(int parity) const { return parity % 2 ? f_.neg(f_.one()) : f_.one(); }

    // Koszul parity of moving the last entry to the front.
    int rotate_parity(const std::uint32_t* t, int q) const {
        int rest = 0;
        for (int i = 0; i < q; ++i) rest += odd_[t[i]];
        return odd_[t[q]] * rest;
    }

    // full = true: b; false: b'
    Mat faces(int q, int w, bool full) {
        const ChainSpace& src = space(q, w);
        if (q == 0) return Mat(0, src.size());
        const ChainSpace& dst = space(q - 1, w);
        return build_columns_parallel<V>(dst.size(), src.size(), [&](std::size_t j) {
            const std::uint32_t* a = src.tuple(j);
            SparseVec<V> out;
            std::vector<std::uint32_t> r(q);
            for (int i = 0; i < q; ++i) {
                for (const auto& e : mult_(a[i], a[i + 1])) {
                    int k = 0;
                    for (int m = 0; m < i; ++m) r[k++] = a[m];
                    r[k++] = e.index;
                    for (int m = i + 2; m <= q; ++m) r[k++] = a[m];
                    emit(out, dst, r, i % 2 ? f_.neg(e.value) : e.value);
                }
            }
            if (full) {
                const V s = sign(q + rotate_parity(a, q));
                for (const auto& e : mult_(a[q], a[0])) {
                    r[0] = e.index;
                    for (int m = 1; m < q; ++m) r[m] = a[m];
                    emit(out, dst, r, f_.mul(s, e.value));
                }
            }
            canonicalize(f_, out);
            return out;
        });
    }

    Mat rotation(int q, int w) {
        const ChainSpace& src = space(q, w);
        return build_columns_parallel<V>(src.size(), src.size(), [&](std::size_t j) {
            const std::uint32_t* a = src.tuple(j);
            std::vector<std::uint32_t> r(a, a + q + 1);
            std::rotate(r.begin(), r.end() - 1, r.end());
            SparseVec<V> out;
            emit(out, src, r, sign(q + rotate_parity(a, q)));
            return out;
        });
    }

    Mat norm_map(int q, int w) {
        const ChainSpace& src = space(q, w);
        return build_columns_parallel<V>(src.size(), src.size(), [&](std::size_t j) {
            std::vector<std::uint32_t> r(src.tuple(j), src.tuple(j) + q + 1);
            V s = f_.one();
            SparseVec<V> out;
            for (int k = 0; k <= q; ++k) {
                emit(out, src, r, s);
                s = f_.mul(s, sign(q + rotate_parity(r.data(), q)));
                std::rotate(r.begin(), r.end() - 1, r.end());
            }
            canonicalize(f_, out);
            return out;
        });
    }

    // B(x) = sum_k s(t^k x), s inserting the idempotent that fixes the first
    // entry; on unnormalized chains B = (1 - t) s N.
    Mat connes(int q, int w) {
        const ChainSpace& src = space(q, w);
        const ChainSpace& dst = space(q + 1, w);
        return build_columns_parallel<V>(dst.size(), src.size(), [&](std::size_t j) {
            std::vector<std::uint32_t> r(src.tuple(j), src.tuple(j) + q + 1);
            std::vector<std::uint32_t> out_t(q + 2);
            V s = f_.one();
            SparseVec<V> out;
            for (int k = 0; k <= q; ++k) {
                out_t[0] = idem_[left_[r[0]]];
                std::copy(r.begin(), r.end(), out_t.begin() + 1);
                emit(out, dst, out_t, s);
                if (!opt_.normalized) {
                    const V st = f_.neg(f_.mul(s, sign(q + 1 + rotate_parity(out_t.data(), q + 1))));
                    std::rotate(out_t.begin(), out_t.end() - 1, out_t.end());
                    emit(out, dst, out_t, st);
                }
                s = f_.mul(s, sign(q + rotate_parity(r.data(), q)));
                std::rotate(r.begin(), r.end() - 1, r.end());
            }
            canonicalize(f_, out);
            return out;
        });
    }

    Mat internal(int q, int w) {
        const ChainSpace& src = space(q, w);
        const ChainSpace& dst = space(q, w - 1);
        if (diff_.empty() || w <= 0) return Mat(dst.size(), src.size());
        return build_columns_parallel<V>(dst.size(), src.size(), [&](std::size_t j) {
            const std::uint32_t* a = src.tuple(j);
            std::vector<std::uint32_t> r(a, a + q + 1);
            SparseVec<V> out;
            int before = 0;
            for (int i = 0; i <= q; ++i) {
                for (const auto& e : diff_[a[i]]) {
                    r[i] = e.index;
                    emit(out, dst, r, before % 2 ? f_.neg(e.value) : e.value);
                }
                r[i] = a[i];
                before += odd_[a[i]];
            }
            canonicalize(f_, out);
            return out;
        });
    }
};

}  // namespace cyclotome
