#include "cyclotome/hodge/spectral.hpp"

#include "cyclotome/linalg/dense.hpp"
#include "cyclotome/linalg/fields.hpp"
#include "cyclotome/linalg/parallel.hpp"

namespace cyclotome {

namespace {

constexpr std::size_t dense_limit = 6000;

template <class F>
class PageEngine {
public:
    using V = typename F::value_type;
    using Vec = DenseVec<V>;

    PageEngine(const F& f, TotalComplex<F>& cp) : f_(f), cp_(cp) {}

    // filtration weight of every coordinate of the degree-n total space
    const std::vector<int>& weights(int n) {
        auto it = weights_.find(n);
        if (it != weights_.end()) return it->second;
        const auto& l = cp_.layout(n);
        require(l.dim() <= dense_limit, ErrorKind::Resource,
                "spectral pages: total degree " + std::to_string(n) + " has dimension " + std::to_string(l.dim()));
        std::vector<int> w;
        for (std::size_t b = 0; b < l.blocks.size(); ++b) w.insert(w.end(), l.sizes[b], -l.blocks[b].column);
        return weights_.emplace(n, std::move(w)).first->second;
    }

    // Z_r^{p,n}: x in F^p with dx in F^{p+r}
    const std::vector<Vec>& cycles(int r, int p, int n) {
        auto key = std::make_tuple(r, p, n);
        auto it = cycles_.find(key);
        if (it != cycles_.end()) return it->second;
        const auto& wn = weights(n);
        const auto& wm = weights(n - 1);
        std::vector<std::size_t> cols, rows;
        for (std::size_t j = 0; j < wn.size(); ++j)
            if (wn[j] >= p) cols.push_back(j);
        for (std::size_t i = 0; i < wm.size(); ++i)
            if (wm[i] < p + r) rows.push_back(i);
        std::vector<Vec> out;
        if (rows.empty()) {
            for (auto j : cols) {
                Vec v(wn.size(), f_.zero());
                v[j] = f_.one();
                out.push_back(std::move(v));
            }
        } else if (!cols.empty()) {
            std::vector<long> row_pos(wm.size(), -1);
            for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<long>(i);
            const auto& d = cp_.d(n);
            DenseMat<V> m(rows.size(), cols.size(), f_.zero());
            for (std::size_t k = 0; k < cols.size(); ++k)
                for (const auto& e : d.col(cols[k]))
                    if (row_pos[e.index] >= 0) m(static_cast<std::size_t>(row_pos[e.index]), k) = e.value;
            auto ker = kernel_basis(f_, std::move(m));
            for (std::size_t t = 0; t < ker.rows(); ++t) {
                Vec v(wn.size(), f_.zero());
                for (std::size_t k = 0; k < cols.size(); ++k) v[cols[k]] = ker(t, k);
                out.push_back(std::move(v));
            }
        }
        return cycles_.emplace(key, std::move(out)).first->second;
    }

    std::vector<Vec> boundaries(const std::vector<Vec>& xs, int n) {
        std::vector<Vec> out;
        const auto& d = cp_.d(n);
        for (const auto& x : xs) out.push_back(mat_vec(f_, d, x));
        return out;
    }

    std::size_t span(std::initializer_list<const std::vector<Vec>*> parts, std::size_t ambient) {
        Subspace<F> s(f_, ambient);
        for (const auto* part : parts)
            for (const auto& v : *part) s.add(v);
        return s.dim();
    }

    struct Entry {
        std::size_t dim = 0;
        std::size_t kernel = 0;
        std::size_t rank = 0;
    };

    // dim E_r^{p,n} alone; needs Z up to weight p + r only
    std::size_t page_dim(int r, int p, int n) {
        const std::size_t ambient = weights(n).size();
        const auto hits = boundaries(cycles(r - 1, p - r + 1, n + 1), n + 1);
        return cycles(r, p, n).size() - span({&cycles(r - 1, p + 1, n), &hits}, ambient);
    }

    Entry entry(int r, int p, int n) {
        auto key = std::make_tuple(r, p, n);
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second;
        const std::size_t ambient = weights(n).size();
        const auto& num = cycles(r, p, n);
        const auto& lower = cycles(r - 1, p + 1, n);
        const auto hits = boundaries(cycles(r - 1, p - r + 1, n + 1), n + 1);
        const std::size_t den = span({&lower, &hits}, ambient);
        Entry e;
        e.dim = num.size() - den;
        e.kernel = span({&cycles(r + 1, p, n), &lower, &hits}, ambient) - den;
        e.rank = e.dim - e.kernel;
        entries_[key] = e;
        return e;
    }

private:
    F f_;
    TotalComplex<F>& cp_;
    std::map<int, std::vector<int>> weights_;
    std::map<std::tuple<int, int, int>, std::vector<Vec>> cycles_;
    std::map<std::tuple<int, int, int>, Entry> entries_;
};

struct SplitPages {
    std::map<std::tuple<int, int, int>, PageEntry> entries;
    bool transitions_ok = true;
    bool e1_matches_hh = true;
};

template <class F>
SplitPages pages_for(const F& f, const Algebra& A, Split s, int N, int r_max, int C, int p_max,
                     const ChainOptions& chains) {
    ChainOperators<F> ops(f, A, s, chains);
    TotalComplex<F> cp(ops, Route::Mixed, -C);
    TotalComplex<F> column(ops, Route::Mixed, 0, 0);
    PageEngine<F> engine(f, cp);
    SplitPages out;
    for (int r = 1; r <= r_max; ++r) {
        for (int p = 0; p <= p_max; ++p) {
            for (int n = -2 * p; n <= N - 2 * p; ++n) {
                const auto e = engine.entry(r, p, n);
                out.entries[{r, p, n}] = {r, p, n, e.dim, e.rank};
                if (r == 1 && e.dim != column.homology_dim(n + 2 * p)) out.e1_matches_hh = false;
                const std::size_t next = engine.page_dim(r + 1, p, n);
                const auto incoming = engine.entry(r, p - r, n + 1);
                if (next != e.kernel - incoming.rank) out.transitions_ok = false;
                if (r == r_max) out.entries[{r + 1, p, n}] = {r + 1, p, n, next, 0};
            }
        }
    }
    return out;
}

int default_window(int r_max, int C) { return C >= 0 ? C : r_max + 2; }

}  // namespace

std::size_t SpectralPages::dim(int r, int p, int n) const {
    auto it = entries.find({r, p, n});
    return it == entries.end() ? 0 : it->second.dim;
}

std::size_t SpectralPages::d_rank(int r, int p, int n) const {
    auto it = entries.find({r, p, n});
    return it == entries.end() ? 0 : it->second.d_rank;
}

FiltrationReport hodge_filtration(const Algebra& a, int N, int C, const EngineOptions& opt) {
    const Algebra A = chain_ready(a, opt.chains.relative);
    require(A.ring.is_field(), ErrorKind::UnsupportedRing, "Hodge filtration needs a field, got " + A.ring.name());
    require(C >= 1, ErrorKind::Input, "column window must be at least 1");
    const auto splits = chain_splits(A, N + 2 * C + 1);
    auto parts = parallel_map<FiltrationReport>(splits.size(), [&](std::size_t i) {
        return visit_field(A.ring, [&](auto f) {
            using F = decltype(f);
            ChainOperators<F> ops(f, A, splits[i], opt.chains);
            TotalComplex<F> cp(ops, Route::Mixed, -C);
            FiltrationReport rep;
            for (int n = -2 * C; n <= N; ++n) {
                const auto& src = cp.layout(n);
                const auto& dst = cp.layout(n - 1);
                rep.cells += src.blocks.size();
                const auto& d = cp.d(n);
                for (std::size_t b = 0; b < src.blocks.size(); ++b)
                    for (std::size_t k = 0; k < src.sizes[b]; ++k)
                        for (const auto& e : d.col(src.offsets[b] + k)) {
                            std::size_t t = 0;
                            while (dst.offsets[t + 1] <= e.index) ++t;
                            if (dst.blocks[t].column > src.blocks[b].column) rep.preserves_filtration = false;
                        }
                // u: column c in degree n to column c - 1 in degree n - 2; F^0 onto F^1
                const auto& low = cp.layout(n - 2);
                for (std::size_t b = 0; b < src.blocks.size(); ++b) {
                    CellBlock blk = src.blocks[b];
                    if (blk.column > 0 || blk.column == -C) continue;
                    blk.column -= 1;
                    auto it = low.index.find(blk);
                    if (it == low.index.end() || low.sizes[it->second] != src.sizes[b]) rep.shift_bijective = false;
                }
                for (std::size_t b = 0; b < low.blocks.size(); ++b) {
                    CellBlock blk = low.blocks[b];
                    if (blk.column > -1) continue;
                    blk.column += 1;
                    if (!src.index.count(blk)) rep.shift_bijective = false;
                }
                const auto u_n = column_map(cp, n, cp, n - 2, 1);
                const auto u_prev = column_map(cp, n - 1, cp, n - 3, 1);
                if (!equal(f, multiply(f, cp.d(n - 2), u_n), multiply(f, u_prev, d))) rep.shift_chain_map = false;
            }
            return rep;
        });
    });
    FiltrationReport out;
    out.N = N;
    out.C = C;
    for (const auto& p : parts) {
        out.cells += p.cells;
        out.preserves_filtration = out.preserves_filtration && p.preserves_filtration;
        out.shift_bijective = out.shift_bijective && p.shift_bijective;
        out.shift_chain_map = out.shift_chain_map && p.shift_chain_map;
    }
    return out;
}

SpectralPages spectral_pages(const Algebra& a, int N, int r_max, int C, const EngineOptions& opt) {
    const Algebra A = chain_ready(a, opt.chains.relative);
    require(A.ring.is_field(), ErrorKind::UnsupportedRing, "spectral pages need a field, got " + A.ring.name());
    require(r_max >= 1, ErrorKind::Input, "r_max must be at least 1");
    C = default_window(r_max, C);
    const int p_max = C - r_max - 1;
    require(p_max >= 0, ErrorKind::Input, "column window too small for r_max: need C > r_max");
    const auto splits = chain_splits(A, N + 2 * C + 1);
    auto parts = parallel_map<SplitPages>(splits.size(), [&](std::size_t i) {
        return visit_field(A.ring, [&](auto f) { return pages_for(f, A, splits[i], N, r_max, C, p_max, opt.chains); });
    });
    SpectralPages out;
    out.N = N;
    out.C = C;
    out.r_max = r_max;
    out.p_max = p_max;
    for (const auto& part : parts) {
        out.transitions_ok = out.transitions_ok && part.transitions_ok;
        out.e1_matches_hh = out.e1_matches_hh && part.e1_matches_hh;
        for (const auto& [k, e] : part.entries) {
            auto& slot = out.entries[k];
            slot.r = e.r;
            slot.p = e.p;
            slot.n = e.n;
            slot.dim += e.dim;
            slot.d_rank += e.d_rank;
        }
    }
    return out;
}

DegenerationReport degeneration_check(const Algebra& a, int N, int r_max, int C, const EngineOptions& opt) {
    DegenerationReport rep;
    rep.pages = spectral_pages(a, N, r_max, C, opt);
    for (const auto& [k, e] : rep.pages.entries) {
        if (e.r > r_max || e.d_rank == 0) continue;
        rep.degenerate = false;
        if (!rep.first_nonzero) rep.first_nonzero = e;  // map order is (r, p, n)
    }
    for (int q = 0; q <= N; ++q) {
        rep.e1_sum[q % 2] += rep.pages.dim(1, 0, q);
        rep.last_page_sum[q % 2] += rep.pages.dim(r_max + 1, 0, q);
    }
    // compare with HP only when the Hochschild tail vanishes and HP is certified
    const bool tail_zero = N >= 1 && rep.pages.dim(1, 0, N) == 0 && rep.pages.dim(1, 0, N - 1) == 0;
    const Algebra A = chain_ready(a, opt.chains.relative);
    if (tail_zero && totals_meaningful(A)) {
        auto hp = periodic_cyclic(a, std::max(N, 6), opt);
        if (hp.stabilized()) {
            rep.abutment_checked = true;
            rep.hp = {hp.table.dim("HP", 0), hp.table.dim("HP", 1)};
            rep.abutment_ok = rep.hp == rep.last_page_sum;
        }
    }
    return rep;
}

}  // namespace cyclotome
