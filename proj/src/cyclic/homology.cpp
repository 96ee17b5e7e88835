#include "cyclotome/cyclic/homology.hpp"

#include <algorithm>
#include <set>

#include "cyclotome/linalg/fields.hpp"
#include "cyclotome/linalg/parallel.hpp"

namespace cyclotome {

std::size_t HomologyTable::dim(const std::string& theory, int degree, int weight, int sector) const {
    auto it = groups.find({theory, degree, weight, sector});
    return it == groups.end() ? 0 : it->second.rank;
}

std::vector<std::size_t> HomologyTable::dims(const std::string& theory, int lo, int hi, int weight, int sector) const {
    std::vector<std::size_t> out;
    for (int n = lo; n <= hi; ++n) out.push_back(dim(theory, n, weight, sector));
    return out;
}

void HomologyTable::merge(const HomologyTable& other) {
    for (const auto& [k, m] : other.groups) {
        auto it = groups.find(k);
        if (it == groups.end()) groups.emplace(k, m);
        else it->second = direct_sum(it->second, m);
    }
    unreliable.insert(other.unreliable.begin(), other.unreliable.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool BicomplexReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok; });
}

bool ConnesReport::exact() const {
    return std::all_of(nodes.begin(), nodes.end(), [](const ConnesNode& n) { return n.ok(); });
}

bool PeriodicResult::stabilized() const {
    return std::all_of(certificates.begin(), certificates.end(),
                       [](const StabilizationCertificate& c) { return c.stabilized; });
}

std::vector<Split> chain_splits(const Algebra& a, int max_q) {
    std::vector<int> weights{-1};
    if (a.graded() && !a.differential && a.max_degree() > 0) {
        int top = (max_q + 1) * a.max_degree();
        if (a.truncation >= 0) top = std::min(top, a.truncation);
        weights.clear();
        for (int w = 0; w <= top; ++w) weights.push_back(w);
    }
    std::vector<int> sectors{-1};
    if (a.sectors) {
        sectors.clear();
        const int classes = static_cast<int>(a.sectors->group.conjugacy_classes().size());
        for (int s = 0; s < classes; ++s) sectors.push_back(s);
    }
    std::vector<Split> out;
    for (int w : weights)
        for (int s : sectors) out.push_back({w, s});
    return out;
}

bool totals_meaningful(const Algebra& a) { return a.truncation < 0; }

namespace {

// Adds m to the split entry and to the partial sums over weight and/or sector.
void record(HomologyTable& t, const std::string& theory, int n, Split s, const ModuleDescriptor& m, bool totals,
            bool reliable = true) {
    const std::set<std::pair<int, int>> keys{{s.weight, s.sector}, {s.weight, -1}, {-1, s.sector}, {-1, -1}};
    for (auto [w, sec] : keys) {
        if (w == -1 && s.weight != -1 && !totals) continue;
        HomologyKey k{theory, n, w, sec};
        auto it = t.groups.find(k);
        if (it == t.groups.end()) t.groups.emplace(k, m);
        else it->second = direct_sum(it->second, m);
        if (!reliable) t.unreliable.insert(k);
    }
}

void note_totals(HomologyTable& t, const Algebra& a) {
    if (!totals_meaningful(a))
        t.notes.push_back("totals over internal degree omitted: graded pieces above degree " +
                          std::to_string(a.truncation) + " are truncated");
}

ChainOptions chains_for(const EngineOptions& opt) {
    ChainOptions c = opt.chains;
    if (opt.route == Route::Bicomplex) c.normalized = false;
    return c;
}

template <class F>
SparseMat<typename F::value_type> identity_matrix(const F& f, std::size_t n) {
    SparseMat<typename F::value_type> m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.col(i).push_back({static_cast<std::uint32_t>(i), f.one()});
    return m;
}

std::vector<int> weights_at(int q, int split_weight, bool dg, int max_weight) {
    if (!dg) return {split_weight};
    std::vector<int> w;
    for (int i = 0; i <= (q + 1) * max_weight; ++i) w.push_back(i);
    return w;
}

}  // namespace

ChainComplex hochschild_complex(const Algebra& a, int N, const ChainOptions& opt, Split split) {
    const Algebra A = chain_ready(a, opt.relative);
    ChainComplex c;
    c.ring = A.ring;
    c.lo = 0;
    c.closed_below = true;
    c.closed_above = false;
    const bool internal = A.graded() && !A.differential;
    visit_coefficients(A.ring, [&](auto f) {
        using F = decltype(f);
        ChainOperators<F> ops(f, A, split, opt);
        TotalComplex<F> col(ops, Route::Mixed, 0, 0);
        for (int n = 0; n <= N + 1; ++n) {
            c.dims.push_back(col.dim(n));
            if (n > 0) c.diffs.push_back(to_scalar_matrix(f, col.d(n)));
            if (internal) {
                std::vector<int> deg;
                for (const auto& blk : col.layout(n).blocks) {
                    const ChainSpace& s = ops.space(blk.q, blk.w);
                    for (std::size_t i = 0; i < s.size(); ++i) {
                        int w = 0;
                        for (int k = 0; k <= blk.q; ++k) w += A.degree(s.tuple(i)[k]);
                        deg.push_back(w);
                    }
                }
                c.internal_degree.push_back(std::move(deg));
            }
        }
    });
    return c;
}

HomologyTable hochschild_homology(const Algebra& a, int N, const EngineOptions& opt) {
    const Algebra A = chain_ready(a, opt.chains.relative);
    const auto splits = chain_splits(A, N);
    const ChainOptions chains = opt.chains;
    using Groups = std::vector<ModuleDescriptor>;
    auto per_split = parallel_map<Groups>(splits.size(), [&](std::size_t i) {
        Groups g;
        if (A.ring.is_field()) {
            visit_field(A.ring, [&](auto f) {
                using F = decltype(f);
                ChainOperators<F> ops(f, A, splits[i], chains);
                TotalComplex<F> col(ops, Route::Mixed, 0, 0);
                for (int n = 0; n <= N; ++n) g.push_back(ModuleDescriptor::vector_space(A.ring, col.homology_dim(n)));
            });
        } else {
            auto h = homology_of_complex(hochschild_complex(A, N, chains, splits[i]));
            for (int n = 0; n <= N; ++n) g.push_back(h[static_cast<std::size_t>(n)].module);
        }
        return g;
    });
    HomologyTable t;
    t.ring = A.ring;
    const bool totals = totals_meaningful(A);
    for (std::size_t i = 0; i < splits.size(); ++i)
        for (int n = 0; n <= N; ++n) record(t, "HH", n, splits[i], per_split[i][static_cast<std::size_t>(n)], totals);
    note_totals(t, A);
    return t;
}

namespace {

template <class F>
BicomplexReport identities_for(const F& f, const Algebra& A, Split s, int N, const ChainOptions& opt) {
    using Mat = SparseMat<typename F::value_type>;
    BicomplexReport rep;
    ChainOptions raw = opt;
    raw.normalized = false;
    ChainOptions reduced = opt;
    reduced.normalized = true;
    ChainOperators<F> ops(f, A, s, raw);
    ChainOperators<F> nops(f, A, s, reduced);
    auto check = [&](const std::string& name, int q, bool ok) { rep.checks.push_back({name, q, s, ok}); };
    auto same = [&](const Mat& x, const Mat& y) { return equal(f, x, y); };
    auto mul = [&](const Mat& x, const Mat& y) { return multiply(f, x, y); };
    const auto one = f.one();
    for (int q = 0; q <= N; ++q) {
        for (int w : weights_at(q, s.weight, ops.dg(), ops.max_weight())) {
            const std::size_t d = ops.dim(q, w);
            ++rep.cells;
            rep.largest_cell = std::max(rep.largest_cell, d);
            if (q >= 2) {
                check("b^2 = 0", q, mul(ops.b(q - 1, w), ops.b(q, w)).is_zero());
                check("b'^2 = 0", q, mul(ops.bprime(q - 1, w), ops.bprime(q, w)).is_zero());
            }
            if (q >= 1) {
                check("(1-t)b' = b(1-t)", q,
                      same(mul(ops.one_minus_t(q - 1, w), ops.bprime(q, w)), mul(ops.b(q, w), ops.one_minus_t(q, w))));
                check("b'N = Nb", q, same(mul(ops.bprime(q, w), ops.norm(q, w)), mul(ops.norm(q - 1, w), ops.b(q, w))));
            }
            Mat p = ops.t(q, w);
            for (int k = 0; k < q; ++k) p = mul(ops.t(q, w), p);
            check("t^(q+1) = 1", q, same(p, identity_matrix(f, d)));

            if (q < N) {  // B raises degree, so stay inside the chains b already touches
                check("B^2 = 0", q, mul(nops.connes_B(q + 1, w), nops.connes_B(q, w)).is_zero());
                Mat bB = mul(nops.b(q + 1, w), nops.connes_B(q, w));
                if (q >= 1) bB = add_scaled(f, bB, one, mul(nops.connes_B(q - 1, w), nops.b(q, w)));
                check("bB + Bb = 0", q, bB.is_zero());
            }

            if (ops.dg() && w >= 1) {
                if (q >= 1)
                    check("b delta = delta b", q,
                          same(mul(ops.b(q, w - 1), ops.delta(q, w)), mul(ops.delta(q - 1, w), ops.b(q, w))));
                check("t delta = delta t", q, same(mul(ops.t(q, w - 1), ops.delta(q, w)), mul(ops.delta(q, w), ops.t(q, w))));
                if (w >= 2) check("delta^2 = 0", q, mul(ops.delta(q, w - 1), ops.delta(q, w)).is_zero());
            }
        }
    }
    return rep;
}

}  // namespace

BicomplexReport bicomplex_identities(const Algebra& a, int N, const ChainOptions& opt) {
    const Algebra A = chain_ready(a, opt.relative);
    const auto splits = chain_splits(A, N);
    auto reports = parallel_map<BicomplexReport>(splits.size(), [&](std::size_t i) {
        return visit_coefficients(A.ring, [&](auto f) { return identities_for(f, A, splits[i], N, opt); });
    });
    BicomplexReport out;
    for (auto& r : reports) {
        out.checks.insert(out.checks.end(), r.checks.begin(), r.checks.end());
        out.cells += r.cells;
        out.largest_cell = std::max(out.largest_cell, r.largest_cell);
    }
    return out;
}

namespace {

struct CyclicSplit {
    std::vector<std::size_t> hh, hc;
    std::vector<SMapRank> s_maps;
    std::vector<ConnesNode> nodes;
};

template <class F>
CyclicSplit cyclic_for(const F& f, const Algebra& A, Split s, int N, Route route, const ChainOptions& chains) {
    ChainOperators<F> ops(f, A, s, chains);
    const int P = route_period(route);
    TotalComplex<F> cc(ops, route, 0);
    TotalComplex<F> head(ops, route, 0, P - 1);
    CyclicSplit out;
    std::vector<std::size_t> rank_i(N + 2, 0), rank_s(N + 2, 0), rank_conn(N + 2, 0);
    for (int n = 0; n <= N; ++n) {
        out.hh.push_back(head.homology_dim(n));
        out.hc.push_back(cc.homology_dim(n));
        rank_i[n] = induced_rank(head, cc, n, n, column_map(head, n, cc, n, 0));
    }
    for (int n = 2; n <= N; ++n) {
        rank_s[n] = induced_rank(cc, cc, n, n - 2, column_map(cc, n, cc, n - 2, P));
        out.s_maps.push_back({n, s, rank_s[n], out.hc[n], out.hc[n - 2]});
    }
    for (int n = 2; n <= N + 1; ++n) rank_conn[n] = induced_rank(cc, head, n - 2, n - 1, connecting_map(cc, n - 2, head));

    for (int n = 0; n <= N; ++n) {
        out.nodes.push_back({n, "HC_n", s, out.hc[n] - rank_s[n], rank_i[n]});
        if (n >= 2) out.nodes.push_back({n, "HC_{n-2}", s, out.hc[n - 2] - rank_conn[n], rank_s[n]});
    }
    for (int n = 1; n <= N + 1; ++n)
        out.nodes.push_back({n, "HH_{n-1}", s, out.hh[n - 1] - rank_i[n - 1], rank_conn[n]});

    if (P == 2) {
        // the first two columns must compute Hochschild homology
        TotalComplex<F> col(ops, route, 0, 0);
        for (int n = 0; n <= N; ++n) {
            const std::size_t r = induced_rank(col, head, n, n, column_map(col, n, head, n, 0));
            out.nodes.push_back({n, "HH_n(column 0)", s, col.homology_dim(n), r});
            out.nodes.push_back({n, "HH_n(two columns)", s, out.hh[n], r});
        }
    }
    return out;
}

}  // namespace

CyclicResult cyclic_homology(const Algebra& a, int N, const EngineOptions& opt) {
    const Algebra A = chain_ready(a, opt.chains.relative);
    require(A.ring.is_field(), ErrorKind::UnsupportedRing, "cyclic homology needs a field, got " + A.ring.name());
    const auto splits = chain_splits(A, N);
    const ChainOptions chains = chains_for(opt);
    auto parts = parallel_map<CyclicSplit>(splits.size(), [&](std::size_t i) {
        return visit_field(A.ring, [&](auto f) { return cyclic_for(f, A, splits[i], N, opt.route, chains); });
    });
    CyclicResult r;
    r.table.ring = A.ring;
    const bool totals = totals_meaningful(A);
    for (std::size_t i = 0; i < splits.size(); ++i) {
        for (int n = 0; n <= N; ++n) {
            record(r.table, "HH", n, splits[i], ModuleDescriptor::vector_space(A.ring, parts[i].hh[n]), totals);
            record(r.table, "HC", n, splits[i], ModuleDescriptor::vector_space(A.ring, parts[i].hc[n]), totals);
        }
        r.s_maps.insert(r.s_maps.end(), parts[i].s_maps.begin(), parts[i].s_maps.end());
        r.connes.nodes.insert(r.connes.nodes.end(), parts[i].nodes.begin(), parts[i].nodes.end());
    }
    note_totals(r.table, A);
    return r;
}

namespace {

template <class F>
std::vector<StabilizationCertificate> periodic_for(const F& f, const Algebra& A, Split s, int N, Route route,
                                                   const ChainOptions& chains) {
    ChainOperators<F> ops(f, A, s, chains);
    const int P = route_period(route);
    TotalComplex<F> cc(ops, route, 0);
    std::map<std::pair<int, int>, std::size_t> memo;
    // rank of S^m : HC_{k+2m} -> HC_k
    auto image = [&](int k, int m) {
        auto key = std::make_pair(k, m);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const int top = k + 2 * m;
        const std::size_t r = induced_rank(cc, cc, top, k, column_map(cc, top, cc, k, m * P));
        memo[key] = r;
        return r;
    };
    std::vector<StabilizationCertificate> out;
    for (int parity = 0; parity <= 1; ++parity) {
        StabilizationCertificate c{parity, s};
        for (int k = parity; !c.stabilized && k + 4 <= N; k += 2) {
            for (int m = 0; k + 2 * m + 4 <= N; ++m) {
                const std::size_t v = image(k, m);
                if (v == image(k, m + 1) && v == image(k + 2, m) && v == image(k + 2, m + 1)) {
                    c.stabilized = true;
                    c.degree = k;
                    c.iterations = m;
                    c.value = v;
                    break;
                }
            }
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace

PeriodicResult periodic_cyclic(const Algebra& a, int N, const EngineOptions& opt) {
    const Algebra A = chain_ready(a, opt.chains.relative);
    require(A.ring.is_field(), ErrorKind::UnsupportedRing, "periodic cyclic homology needs a field, got " + A.ring.name());
    const auto splits = chain_splits(A, N);
    const ChainOptions chains = chains_for(opt);
    auto parts = parallel_map<std::vector<StabilizationCertificate>>(splits.size(), [&](std::size_t i) {
        return visit_field(A.ring, [&](auto f) { return periodic_for(f, A, splits[i], N, opt.route, chains); });
    });
    PeriodicResult r;
    r.table.ring = A.ring;
    const bool totals = totals_meaningful(A);
    for (std::size_t i = 0; i < splits.size(); ++i) {
        for (const auto& c : parts[i]) {
            record(r.table, "HP", c.parity, splits[i], ModuleDescriptor::vector_space(A.ring, c.value), totals,
                   c.stabilized);
            r.certificates.push_back(c);
        }
    }
    if (!r.stabilized())
        r.table.notes.push_back("periodic image did not stabilize within degree " + std::to_string(N));
    note_totals(r.table, A);
    return r;
}

namespace {

struct NegativeSplit {
    std::vector<std::size_t> dims;
    std::vector<char> reliable;
    bool sequence_ok = true;
};

template <class F>
NegativeSplit negative_for(const F& f, const Algebra& A, Split s, int N, int C, Route route, const ChainOptions& chains) {
    ChainOperators<F> ops(f, A, s, chains);
    const int P = route_period(route);
    TotalComplex<F> cm(ops, route, -C, P - 1);
    TotalComplex<F> wider(ops, route, -C - P, P - 1);
    TotalComplex<F> cp(ops, route, -C);
    TotalComplex<F> cc(ops, route, 0);
    const int lo = cm.shift(-C);
    NegativeSplit out;
    for (int n = lo; n <= N; ++n) {
        const std::size_t h = cm.homology_dim(n);
        const std::size_t hw = wider.homology_dim(n);
        const std::size_t r = induced_rank(wider, cm, n, n, column_map(wider, n, cm, n, 0));
        out.dims.push_back(h);
        out.reliable.push_back(h == hw && r == h);
    }
    // 0 -> CC^- -> CP -> CC[-2] -> 0, degree by degree
    for (int n = lo; n <= N; ++n) {
        auto inc = [&](int m) { return column_map(cm, m, cp, m, 0); };
        auto proj = [&](int m) { return column_map(cp, m, cc, m - 2, P); };
        const auto i_n = inc(n);
        const auto p_n = proj(n);
        bool ok = cp.dim(n) == cm.dim(n) + cc.dim(n - 2);
        ok = ok && rank_of(f, i_n) == cm.dim(n) && rank_of(f, p_n) == cc.dim(n - 2);
        ok = ok && multiply(f, p_n, i_n).is_zero();
        ok = ok && equal(f, multiply(f, cp.d(n), i_n), multiply(f, inc(n - 1), cm.d(n)));
        ok = ok && equal(f, multiply(f, cc.d(n - 2), p_n), multiply(f, proj(n - 1), cp.d(n)));
        out.sequence_ok = out.sequence_ok && ok;
    }
    return out;
}

}  // namespace

NegativeResult negative_cyclic(const Algebra& a, int N, int C, const EngineOptions& opt) {
    const Algebra A = chain_ready(a, opt.chains.relative);
    require(A.ring.is_field(), ErrorKind::UnsupportedRing, "negative cyclic homology needs a field, got " + A.ring.name());
    require(C >= 0, ErrorKind::Input, "column window must be non-negative");
    const int P = route_period(opt.route);
    const int lo = opt.route == Route::Mixed ? -2 * C : -C;
    // rows reach N - lo in the widest window
    const auto splits = chain_splits(A, N - lo + 2 * P);
    const ChainOptions chains = chains_for(opt);
    auto parts = parallel_map<NegativeSplit>(splits.size(), [&](std::size_t i) {
        return visit_field(A.ring, [&](auto f) { return negative_for(f, A, splits[i], N, C, opt.route, chains); });
    });
    NegativeResult r;
    r.table.ring = A.ring;
    r.column_window = C;
    r.lo = lo;
    const bool totals = totals_meaningful(A);
    for (std::size_t i = 0; i < splits.size(); ++i) {
        for (int n = lo; n <= N; ++n) {
            const auto k = static_cast<std::size_t>(n - lo);
            record(r.table, "HC-", n, splits[i], ModuleDescriptor::vector_space(A.ring, parts[i].dims[k]), totals,
                   parts[i].reliable[k]);
        }
        r.sequence_ok = r.sequence_ok && parts[i].sequence_ok;
    }
    note_totals(r.table, A);
    return r;
}

}  // namespace cyclotome
