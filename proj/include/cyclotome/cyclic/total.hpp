#pragma once

// Totalization of the cyclic bicomplexes over a window of columns.
//
// Columns are indexed so that column 0 is the Hochschild column and the
// horizontal maps go from column c to column c - 1. A cell in column c and
// Hochschild row r has total degree r + shift(c), where shift(c) = 2c for the
// normalized (b, B) complex and c for the two-periodic complex with columns
// alternating b and -b'. Columns below the window are quotiented away and
// columns above are dropped, which is a subquotient because the differential
// never raises the column index.

#include <climits>
#include <map>
#include <tuple>
#include <vector>

#include "cyclotome/cyclic/chains.hpp"

namespace cyclotome {

enum class Route {
    Mixed,      // normalized (b, B), one column per period
    Bicomplex,  // b / -b' columns with 1 - t and N, two columns per period
};

inline int route_period(Route r) { return r == Route::Mixed ? 1 : 2; }

struct CellBlock {
    int column;
    int q;
    int w;
    friend auto operator<=>(const CellBlock&, const CellBlock&) = default;
};

template <class F>
class TotalComplex {
public:
    using V = typename F::value_type;
    using Mat = SparseMat<V>;
    static constexpr int unbounded = INT_MAX / 4;

    struct Layout {
        std::vector<CellBlock> blocks;
        std::vector<std::size_t> sizes;
        std::vector<std::size_t> offsets;  // size blocks + 1
        std::map<CellBlock, std::size_t> index;
        std::size_t dim() const { return offsets.back(); }
    };

    TotalComplex(ChainOperators<F>& ops, Route route, int col_lo, int col_hi = unbounded)
        : ops_(ops), route_(route), lo_(col_lo), hi_(col_hi) {}

    ChainOperators<F>& ops() { return ops_; }
    Route route() const { return route_; }
    int period() const { return route_period(route_); }
    int col_lo() const { return lo_; }
    int col_hi() const { return hi_; }
    int shift(int c) const { return route_ == Route::Mixed ? 2 * c : c; }

    const Layout& layout(int n) {
        auto it = layouts_.find(n);
        if (it != layouts_.end()) return it->second;
        Layout l;
        l.offsets.push_back(0);
        const int w0 = ops_.split().weight;
        for (int c = lo_; c <= hi_; ++c) {
            const int r = n - shift(c);
            if (r < 0) break;
            auto add = [&](int q, int w) {
                l.index[{c, q, w}] = l.blocks.size();
                l.blocks.push_back({c, q, w});
                l.sizes.push_back(ops_.dim(q, w));
                l.offsets.push_back(l.offsets.back() + l.sizes.back());
            };
            if (ops_.dg()) {
                for (int q = 0; q <= r; ++q) add(q, r - q);
            } else {
                add(r, w0);
            }
        }
        return layouts_.emplace(n, std::move(l)).first->second;
    }

    std::size_t dim(int n) { return layout(n).dim(); }

    // D_n : T_n -> T_{n-1}
    const Mat& d(int n) {
        auto it = diffs_.find(n);
        if (it != diffs_.end()) return it->second;
        const Layout& src = layout(n);
        const Layout& dst = layout(n - 1);
        std::vector<Block<V>> blocks;
        auto put = [&](std::size_t j, CellBlock target, const Mat& m, int sign) {
            auto t = dst.index.find(target);
            if (t == dst.index.end()) {
                if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return;
                if (target.column < lo_ || target.column > hi_) return;
                fail(ErrorKind::Internal, "total complex block missing");
            }
            blocks.push_back({t->second, j, &m, sign});
        };
        const bool mixed = route_ == Route::Mixed;
        for (std::size_t j = 0; j < src.blocks.size(); ++j) {
            const auto [c, q, w] = src.blocks[j];
            const bool odd_col = ((c % 2) + 2) % 2 == 1;
            if (q >= 1) {
                if (mixed || !odd_col) put(j, {c, q - 1, w}, ops_.b(q, w), 1);
                else put(j, {c, q - 1, w}, ops_.bprime(q, w), -1);
            }
            if (ops_.dg() && w >= 1) {
                const int parity = mixed ? q : c + q;
                put(j, {c, q, w - 1}, ops_.delta(q, w), parity % 2 ? -1 : 1);
            }
            if (c - 1 >= lo_) {
                if (mixed) put(j, {c - 1, q + 1, w}, ops_.connes_B(q, w), 1);
                else if (odd_col) put(j, {c - 1, q, w}, ops_.one_minus_t(q, w), 1);
                else put(j, {c - 1, q, w}, ops_.norm(q, w), 1);
            }
        }
        Mat m = assemble_blocks(ops_.field(), dst.sizes, src.sizes, blocks);
        return diffs_.emplace(n, std::move(m)).first->second;
    }

    std::size_t rank(int n) {
        auto it = ranks_.find(n);
        if (it != ranks_.end()) return it->second;
        const std::size_t r = rank_of(ops_.field(), d(n));
        ranks_[n] = r;
        return r;
    }

    std::size_t homology_dim(int n) { return dim(n) - rank(n) - rank(n + 1); }

private:
    ChainOperators<F>& ops_;
    Route route_;
    int lo_, hi_;
    std::map<int, Layout> layouts_;
    std::map<int, Mat> diffs_;
    std::map<int, std::size_t> ranks_;
};

// Identity on matching blocks: block (c, q, w) of src in degree n goes to block
// (c - col_shift, q, w) of dst in degree m when present there.
template <class F>
SparseMat<typename F::value_type> column_map(TotalComplex<F>& src, int n, TotalComplex<F>& dst, int m, int col_shift) {
    const auto& s = src.layout(n);
    const auto& t = dst.layout(m);
    SparseMat<typename F::value_type> out(t.dim(), s.dim());
    const auto one = src.ops().field().one();
    for (std::size_t j = 0; j < s.blocks.size(); ++j) {
        CellBlock b = s.blocks[j];
        b.column -= col_shift;
        auto it = t.index.find(b);
        if (it == t.index.end()) continue;
        for (std::size_t k = 0; k < s.sizes[j]; ++k)
            out.col(s.offsets[j] + k).push_back({static_cast<std::uint32_t>(t.offsets[it->second] + k), one});
    }
    return out;
}

// Connecting map for the periodicity sequence: the column-0 part of a chain in
// degree n of `cc` is pushed through the horizontal map of column P into
// column P - 1 of `head` (degree n + 1), which holds the first P columns.
template <class F>
SparseMat<typename F::value_type> connecting_map(TotalComplex<F>& cc, int n, TotalComplex<F>& head) {
    using V = typename F::value_type;
    const auto& s = cc.layout(n);
    const auto& t = head.layout(n + 1);
    auto& ops = cc.ops();
    const int P = cc.period();
    std::vector<Block<V>> blocks;
    for (std::size_t j = 0; j < s.blocks.size(); ++j) {
        const auto [c, q, w] = s.blocks[j];
        if (c != 0) continue;
        const SparseMat<V>* m;
        CellBlock target{P - 1, q, w};
        if (cc.route() == Route::Mixed) {
            m = &ops.connes_B(q, w);
            target.q = q + 1;
        } else {
            m = &ops.norm(q, w);  // column P = 2 is even
        }
        auto it = t.index.find(target);
        if (it == t.index.end()) {
            if (m->is_zero()) continue;
            fail(ErrorKind::Internal, "connecting map target missing");
        }
        blocks.push_back({it->second, j, m, 1});
    }
    return assemble_blocks(ops.field(), t.sizes, s.sizes, blocks);
}

// rank of H(f) for f: C -> C' with f(B) in B':
// rank [[d'_{n+1}, f_n], [0, d_n]] - rank d'_{n+1} - rank d_n.
template <class F>
std::size_t induced_rank(const F& f, const SparseMat<typename F::value_type>& d_target_next,
                         std::size_t rank_target_next, const SparseMat<typename F::value_type>& map,
                         const SparseMat<typename F::value_type>& d_source, std::size_t rank_source) {
    using V = typename F::value_type;
    std::vector<std::size_t> rows{map.rows(), d_source.rows()};
    std::vector<std::size_t> cols{d_target_next.cols(), map.cols()};
    if (d_target_next.rows() != map.rows() || d_source.cols() != map.cols())
        fail(ErrorKind::Internal, "induced_rank: shape mismatch");
    std::vector<Block<V>> blocks{{0, 0, &d_target_next, 1}, {0, 1, &map, 1}, {1, 1, &d_source, 1}};
    const std::size_t r = rank_of(f, assemble_blocks(f, rows, cols, blocks));
    return r - rank_target_next - rank_source;
}

// rank of the map induced in degree n between two total complexes.
template <class F>
std::size_t induced_rank(TotalComplex<F>& src, TotalComplex<F>& dst, int n_src, int n_dst,
                         const SparseMat<typename F::value_type>& map) {
    return induced_rank(src.ops().field(), dst.d(n_dst + 1), dst.rank(n_dst + 1), map, src.d(n_src), src.rank(n_src));
}

}  // namespace cyclotome
