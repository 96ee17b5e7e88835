#include "cyclotome/burnside/burnside.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

#include "cyclotome/linalg/error.hpp"
#include "cyclotome/linalg/module.hpp"

namespace cyclotome {

int mask_order(SubgroupMask h) { return std::popcount(h); }

bool mask_contains(SubgroupMask h, int g) { return (h >> g) & 1u; }

SubgroupMask conjugate(const GroupTable& g, SubgroupMask h, int x) {
    SubgroupMask out = 0;
    for (int e = 0; e < g.size(); ++e)
        if (mask_contains(h, e)) out |= SubgroupMask{1} << g.conj(x, e);
    return out;
}

namespace {

SubgroupMask bit(int g) { return SubgroupMask{1} << g; }

SubgroupMask closure(const GroupTable& g, SubgroupMask seed) {
    SubgroupMask h = seed | bit(g.identity());
    for (bool grew = true; grew;) {
        grew = false;
        for (int a = 0; a < g.size(); ++a) {
            if (!mask_contains(h, a)) continue;
            for (int b = 0; b < g.size(); ++b) {
                if (!mask_contains(h, b) || mask_contains(h, g.mul(a, b))) continue;
                h |= bit(g.mul(a, b));
                grew = true;
            }
        }
    }
    return h;
}

void check_group_size(const GroupTable& g, int bound) {
    require(g.size() <= bound, ErrorKind::Resource,
            "group of order " + std::to_string(g.size()) + " exceeds the bound " + std::to_string(bound));
    require(g.size() <= 32, ErrorKind::Resource, "subgroup masks hold at most 32 elements");
}

std::vector<SubgroupMask> all_subgroups(const GroupTable& g) {
    std::set<SubgroupMask> found{bit(g.identity())};
    std::vector<SubgroupMask> queue{bit(g.identity())};
    while (!queue.empty()) {
        const SubgroupMask h = queue.back();
        queue.pop_back();
        for (int x = 0; x < g.size(); ++x) {
            if (mask_contains(h, x)) continue;
            const SubgroupMask k = closure(g, h | bit(x));
            if (found.insert(k).second) queue.push_back(k);
        }
    }
    std::vector<SubgroupMask> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](SubgroupMask a, SubgroupMask b) {
        return mask_order(a) != mask_order(b) ? mask_order(a) < mask_order(b) : a < b;
    });
    return out;
}

// Smallest conjugate of k under elements of `by`.
SubgroupMask canonical_conjugate(const GroupTable& g, SubgroupMask k, SubgroupMask by) {
    SubgroupMask best = k;
    for (int x = 0; x < g.size(); ++x)
        if (mask_contains(by, x)) best = std::min(best, conjugate(g, k, x));
    return best;
}

SubgroupMask pair_stabilizer(const GSet& x, int a, const GSet& y, int b) {
    SubgroupMask s = 0;
    for (std::size_t g = 0; g < x.act.size(); ++g)
        if (x.act[g][a] == a && y.act[g][b] == b) s |= bit(static_cast<int>(g));
    return s;
}

void check_gset(const GroupTable& g, const GSet& x, const char* what) {
    require(x.act.size() == static_cast<std::size_t>(g.size()), ErrorKind::Input,
            std::string(what) + ": action table needs one row per group element");
    for (const auto& row : x.act) {
        require(row.size() == x.size, ErrorKind::Input, std::string(what) + ": action row of wrong length");
        for (int v : row) require(v >= 0 && static_cast<std::size_t>(v) < x.size, ErrorKind::Input,
                                  std::string(what) + ": action value out of range");
    }
}

std::vector<SpanClass> hom_basis_from(const GroupTable& g, const std::vector<SubgroupMask>& subgroups, const GSet& x,
                                      const GSet& y) {
    std::vector<SpanClass> out;
    std::vector<bool> seen(x.size * y.size, false);
    for (std::size_t o = 0; o < seen.size(); ++o) {
        if (seen[o]) continue;
        const int a = static_cast<int>(o / y.size), b = static_cast<int>(o % y.size);
        for (int e = 0; e < g.size(); ++e)
            seen[static_cast<std::size_t>(x.act[e][a]) * y.size + static_cast<std::size_t>(y.act[e][b])] = true;
        const SubgroupMask stab = pair_stabilizer(x, a, y, b);
        std::set<SubgroupMask> middles;
        for (SubgroupMask k : subgroups)
            if ((k & stab) == k) middles.insert(canonical_conjugate(g, k, stab));
        for (SubgroupMask k : middles) out.push_back({o, k});
    }
    return out;
}

}  // namespace

std::size_t SubgroupLattice::class_index(SubgroupMask h) const {
    const auto it = std::find(subgroups.begin(), subgroups.end(), h);
    require(it != subgroups.end(), ErrorKind::Input, "not a subgroup");
    return class_of[static_cast<std::size_t>(it - subgroups.begin())];
}

std::string SubgroupLattice::class_name(std::size_t c) const {
    const int n = mask_order(rep(c));
    if (n == 1) return "e";
    if (n == group.size()) return "G";
    return "H" + std::to_string(c) + "/" + std::to_string(n);
}

SubgroupLattice subgroup_classes(const GroupTable& g, int bound) {
    check_group_size(g, bound);
    SubgroupLattice l;
    l.group = g;
    l.subgroups = all_subgroups(g);
    const std::size_t n = l.subgroups.size();
    l.class_of.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (l.class_of[i] != n) continue;
        std::set<SubgroupMask> conj;
        for (int x = 0; x < g.size(); ++x) conj.insert(conjugate(g, l.subgroups[i], x));
        std::vector<std::size_t> members;
        for (std::size_t j = i; j < n; ++j)
            if (conj.count(l.subgroups[j])) {
                members.push_back(j);
                l.class_of[j] = l.classes.size();
            }
        l.classes.push_back(std::move(members));
    }
    const std::size_t c = l.classes.size();
    l.below.assign(c, std::vector<bool>(c, false));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t m : l.classes[i])
                if ((l.subgroups[m] & l.rep(j)) == l.subgroups[m]) l.below[i][j] = true;
    return l;
}

SubgroupMask stabilizer(const GSet& x, int point) {
    SubgroupMask s = 0;
    for (std::size_t g = 0; g < x.act.size(); ++g)
        if (x.act[g][point] == point) s |= bit(static_cast<int>(g));
    return s;
}

std::vector<std::vector<int>> orbits(const GSet& x) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(x.size, false);
    for (std::size_t s = 0; s < x.size; ++s) {
        if (seen[s]) continue;
        std::set<int> orb;
        for (const auto& row : x.act) orb.insert(row[s]);
        for (int t : orb) seen[static_cast<std::size_t>(t)] = true;
        out.emplace_back(orb.begin(), orb.end());
    }
    return out;
}

Orbit orbit(const GroupTable& g, SubgroupMask h) {
    Orbit o;
    o.subgroup = h;
    o.coset_of.assign(static_cast<std::size_t>(g.size()), -1);
    for (int x = 0; x < g.size(); ++x) {
        if (o.coset_of[x] >= 0) continue;
        const int c = static_cast<int>(o.coset_rep.size());
        o.coset_rep.push_back(x);
        for (int e = 0; e < g.size(); ++e)
            if (mask_contains(h, e)) o.coset_of[g.mul(x, e)] = c;
    }
    o.set.size = o.coset_rep.size();
    o.set.act.assign(static_cast<std::size_t>(g.size()), std::vector<int>(o.set.size));
    for (int x = 0; x < g.size(); ++x)
        for (std::size_t c = 0; c < o.set.size; ++c) o.set.act[x][c] = o.coset_of[g.mul(x, o.coset_rep[c])];
    return o;
}

GSet point_set(const GroupTable& g) { return {1, std::vector<std::vector<int>>(static_cast<std::size_t>(g.size()), {0})}; }

GSet disjoint_union(const GSet& x, const GSet& y) {
    require(x.act.size() == y.act.size(), ErrorKind::Input, "disjoint union of G-sets over different groups");
    GSet u{x.size + y.size, x.act};
    for (std::size_t g = 0; g < u.act.size(); ++g)
        for (int v : y.act[g]) u.act[g].push_back(v + static_cast<int>(x.size));
    return u;
}

GSet gset_from_orbits(const SubgroupLattice& l, const std::vector<std::pair<std::size_t, std::size_t>>& parts) {
    GSet out{0, std::vector<std::vector<int>>(static_cast<std::size_t>(l.group.size()))};
    for (const auto& [c, mult] : parts) {
        require(c < l.class_count(), ErrorKind::Input, "subgroup class out of range");
        const GSet o = orbit(l.group, l.rep(c)).set;
        for (std::size_t k = 0; k < mult; ++k) out = disjoint_union(out, o);
    }
    return out;
}

void check_span(const GroupTable& g, const Span& s) {
    check_gset(g, s.source, "span source");
    check_gset(g, s.target, "span target");
    check_gset(g, s.middle, "span middle");
    require(s.left.size() == s.middle.size && s.right.size() == s.middle.size, ErrorKind::Input,
            "span legs must be defined on every middle point");
    for (std::size_t m = 0; m < s.middle.size; ++m)
        require(s.left[m] >= 0 && static_cast<std::size_t>(s.left[m]) < s.source.size && s.right[m] >= 0 &&
                    static_cast<std::size_t>(s.right[m]) < s.target.size,
                ErrorKind::Input, "span leg value out of range");
    for (int x = 0; x < g.size(); ++x)
        for (std::size_t m = 0; m < s.middle.size; ++m) {
            const int gm = s.middle.act[x][m];
            require(s.left[gm] == s.source.act[x][s.left[m]], ErrorKind::Validation, "left leg is not equivariant");
            require(s.right[gm] == s.target.act[x][s.right[m]], ErrorKind::Validation, "right leg is not equivariant");
        }
}

Span identity_span(const GSet& x) {
    Span s{x, x, x, {}, {}};
    for (std::size_t i = 0; i < x.size; ++i) {
        s.left.push_back(static_cast<int>(i));
        s.right.push_back(static_cast<int>(i));
    }
    return s;
}

Span span_compose(const GroupTable& g, const Span& s1, const Span& s2) {
    require(s1.target == s2.source, ErrorKind::Input, "span composition: middle G-sets do not match");
    const std::size_t n1 = s1.middle.size, n2 = s2.middle.size;
    std::vector<int> index(n1 * n2, -1);
    Span out;
    out.source = s1.source;
    out.target = s2.target;
    std::vector<std::pair<int, int>> pts;
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b)
            if (s1.right[a] == s2.left[b]) {
                index[a * n2 + b] = static_cast<int>(pts.size());
                pts.emplace_back(static_cast<int>(a), static_cast<int>(b));
                out.left.push_back(s1.left[a]);
                out.right.push_back(s2.right[b]);
            }
    out.middle.size = pts.size();
    out.middle.act.assign(static_cast<std::size_t>(g.size()), std::vector<int>(pts.size()));
    for (int x = 0; x < g.size(); ++x)
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto [a, b] = pts[i];
            out.middle.act[x][i] =
                index[static_cast<std::size_t>(s1.middle.act[x][a]) * n2 + static_cast<std::size_t>(s2.middle.act[x][b])];
        }
    return out;
}

void BurnsideHomElement::add(const SpanClass& c, std::int64_t k) {
    if (k == 0) return;
    auto& v = terms[c];
    v += k;
    if (v == 0) terms.erase(c);
}

BurnsideHomElement& BurnsideHomElement::operator+=(const BurnsideHomElement& o) {
    for (const auto& [c, k] : o.terms) add(c, k);
    return *this;
}

BurnsideHomElement classify(const GroupTable& g, const Span& s) {
    check_span(g, s);
    const std::size_t ny = s.target.size;
    BurnsideHomElement out;
    for (const auto& orb : orbits(s.middle)) {
        std::size_t o = s.source.size * ny;
        int chosen = -1;
        for (int m : orb) {
            const std::size_t pt = static_cast<std::size_t>(s.left[m]) * ny + static_cast<std::size_t>(s.right[m]);
            if (pt < o) {
                o = pt;
                chosen = m;
            }
        }
        const SubgroupMask stab = pair_stabilizer(s.source, s.left[chosen], s.target, s.right[chosen]);
        out.add({o, canonical_conjugate(g, stabilizer(s.middle, chosen), stab)}, 1);
    }
    return out;
}

Span realize(const GroupTable& g, const GSet& x, const GSet& y, const SpanClass& c) {
    require(c.point < x.size * y.size, ErrorKind::Input, "span class point out of range");
    const int a = static_cast<int>(c.point / y.size), b = static_cast<int>(c.point % y.size);
    require((c.middle & pair_stabilizer(x, a, y, b)) == c.middle, ErrorKind::Input,
            "span class middle does not fix its point");
    const Orbit o = orbit(g, c.middle);
    Span s{x, y, o.set, {}, {}};
    for (int r : o.coset_rep) {
        s.left.push_back(x.act[r][a]);
        s.right.push_back(y.act[r][b]);
    }
    return s;
}

BurnsideHomElement compose(const GroupTable& g, const GSet& x, const GSet& y, const GSet& z, const BurnsideHomElement& a,
                           const BurnsideHomElement& b) {
    BurnsideHomElement out;
    for (const auto& [ca, ka] : a.terms) {
        const Span sa = realize(g, x, y, ca);
        for (const auto& [cb, kb] : b.terms)
            for (const auto& [c, k] : classify(g, span_compose(g, sa, realize(g, y, z, cb))).terms)
                out.add(c, k * ka * kb);
    }
    return out;
}

std::vector<SpanClass> hom_basis(const GroupTable& g, const GSet& x, const GSet& y) {
    check_group_size(g, default_group_bound);
    check_gset(g, x, "hom source");
    check_gset(g, y, "hom target");
    return hom_basis_from(g, all_subgroups(g), x, y);
}

std::vector<SpanClass> burnside_hom_basis(const SubgroupLattice& l, std::size_t h1, std::size_t h2) {
    require(h1 < l.class_count() && h2 < l.class_count(), ErrorKind::Input, "subgroup class out of range");
    return hom_basis_from(l.group, l.subgroups, orbit(l.group, l.rep(h1)).set, orbit(l.group, l.rep(h2)).set);
}

std::vector<std::int64_t> marks(const SubgroupLattice& l, const GSet& x) {
    std::vector<std::int64_t> out;
    for (std::size_t h = 0; h < l.class_count(); ++h) {
        std::int64_t fixed = 0;
        for (std::size_t p = 0; p < x.size; ++p)
            if ((stabilizer(x, static_cast<int>(p)) & l.rep(h)) == l.rep(h)) ++fixed;
        out.push_back(fixed);
    }
    return out;
}

std::vector<std::vector<std::int64_t>> table_of_marks(const SubgroupLattice& l) {
    std::vector<std::vector<std::int64_t>> t;
    for (std::size_t k = 0; k < l.class_count(); ++k) t.push_back(marks(l, orbit(l.group, l.rep(k)).set));
    return t;
}

std::vector<OrbitMap> orbit_maps(const SubgroupLattice& l) {
    std::vector<OrbitMap> out;
    for (std::size_t from = 0; from < l.class_count(); ++from)
        for (std::size_t to = 0; to < l.class_count(); ++to) {
            const GSet target = orbit(l.group, l.rep(to)).set;
            for (std::size_t z = 0; z < target.size; ++z)
                if ((stabilizer(target, static_cast<int>(z)) & l.rep(from)) == l.rep(from))
                    out.push_back({from, to, static_cast<int>(z)});
        }
    return out;
}

std::string describe(const SubgroupLattice& l, const OrbitMap& f) {
    const Orbit o = orbit(l.group, l.rep(f.to));
    return "G/" + l.class_name(f.from) + " -> G/" + l.class_name(f.to) + " at " +
           l.group.label(o.coset_rep[static_cast<std::size_t>(f.point)]);
}

namespace {

struct MackeyContext {
    const SubgroupLattice& lattice;
    std::vector<Orbit> orbits;
    std::vector<OrbitMap> maps;
    std::map<OrbitMap, std::size_t> map_index;

    explicit MackeyContext(const SubgroupLattice& l) : lattice(l), maps(orbit_maps(l)) {
        for (std::size_t c = 0; c < l.class_count(); ++c) orbits.push_back(orbit(l.group, l.rep(c)));
        for (std::size_t i = 0; i < maps.size(); ++i) map_index[maps[i]] = i;
    }

    const GSet& set(std::size_t c) const { return orbits[c].set; }

    // G/H <- G/L = G/L
    Span restriction_span(const OrbitMap& f) const {
        Span s{set(f.to), set(f.from), set(f.from), {}, {}};
        for (std::size_t c = 0; c < set(f.from).size; ++c) {
            s.left.push_back(set(f.to).act[orbits[f.from].coset_rep[c]][f.point]);
            s.right.push_back(static_cast<int>(c));
        }
        return s;
    }

    // G/L = G/L -> G/H
    Span transfer_span(const OrbitMap& f) const {
        Span s = restriction_span(f);
        std::swap(s.source, s.target);
        std::swap(s.left, s.right);
        return s;
    }

    // The basis span of Hom(G/h, G/k) for class c as transfer(t) o restriction(r).
    std::pair<std::size_t, std::size_t> factor(std::size_t h, std::size_t k, const SpanClass& c) const {
        const GroupTable& g = lattice.group;
        const std::size_t l = lattice.class_index(c.middle);
        int by = -1;
        for (int x = 0; x < g.size() && by < 0; ++x)
            if (conjugate(g, c.middle, x) == lattice.rep(l)) by = x;
        const std::size_t ny = set(k).size;
        const int a = static_cast<int>(c.point / ny), b = static_cast<int>(c.point % ny);
        const OrbitMap r{l, h, set(h).act[by][a]};
        const OrbitMap t{l, k, set(k).act[by][b]};
        return {map_index.at(t), map_index.at(r)};
    }
};

IntMat scaled_add(IntMat acc, const IntMat& m, std::int64_t k) {
    for (std::size_t i = 0; i < acc.rows(); ++i)
        for (std::size_t j = 0; j < acc.cols(); ++j) acc(i, j) += m(i, j) * static_cast<long>(k);
    return acc;
}

// Matrix of the span s : G/from -> G/to under the functor spanned by `column`,
// which maps a basis element of Hom(x, G/from) to its image.
IntMat represented_matrix(const MackeyContext& ctx, const GSet& x, const std::vector<std::vector<SpanClass>>& bases,
                          std::size_t from, std::size_t to, const Span& s) {
    const GroupTable& g = ctx.lattice.group;
    const BurnsideHomElement sigma = classify(g, s);
    const auto& src = bases[from];
    const auto& dst = bases[to];
    IntMat m = int_zero(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        BurnsideHomElement beta;
        beta.add(src[j], 1);
        for (const auto& [c, k] : compose(g, x, ctx.set(from), ctx.set(to), beta, sigma).terms) {
            const auto it = std::find(dst.begin(), dst.end(), c);
            require(it != dst.end(), ErrorKind::Internal, "composite span outside the Hom basis");
            m(static_cast<std::size_t>(it - dst.begin()), j) += static_cast<long>(k);
        }
    }
    return m;
}

}  // namespace

MackeyFunctor represented_mackey(const SubgroupLattice& l, const GSet& x) {
    check_gset(l.group, x, "represented functor");
    MackeyContext ctx(l);
    std::vector<std::vector<SpanClass>> bases;
    MackeyFunctor m;
    m.ring = Ring::integers();
    for (std::size_t c = 0; c < l.class_count(); ++c) {
        bases.push_back(hom_basis_from(l.group, l.subgroups, x, ctx.set(c)));
        m.rank.push_back(bases.back().size());
    }
    for (const auto& f : ctx.maps) {
        m.restriction.push_back(represented_matrix(ctx, x, bases, f.to, f.from, ctx.restriction_span(f)));
        m.transfer.push_back(represented_matrix(ctx, x, bases, f.from, f.to, ctx.transfer_span(f)));
    }
    return m;
}

MackeyFunctor burnside_ring_mackey(const SubgroupLattice& l) { return represented_mackey(l, point_set(l.group)); }

MackeyFunctor fixed_point_mackey(const SubgroupLattice& l, const Ring& ring, const std::vector<IntMat>& rho) {
    const GroupTable& g = l.group;
    require(ring.kind() == RingKind::Integers || ring.kind() == RingKind::PrimeField, ErrorKind::UnsupportedRing,
            "fixed-point functor needs Z or a prime field");
    require(rho.size() == static_cast<std::size_t>(g.size()), ErrorKind::Input, "one matrix per group element needed");
    const std::size_t n = rho.front().rows();
    for (const auto& r : rho) require(r.rows() == n && r.cols() == n, ErrorKind::Input, "representation matrices must be square");
    for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < g.size(); ++b) {
            const IntMat lhs = reduce_entries(ring, int_multiply(rho[a], rho[b]));
            require(lhs == reduce_entries(ring, rho[g.mul(a, b)]), ErrorKind::Validation, "not a representation");
        }
    MackeyContext ctx(l);
    std::vector<IntMat> fixed;
    MackeyFunctor m;
    m.ring = ring;
    for (std::size_t c = 0; c < l.class_count(); ++c) {
        IntMat eq = int_zero(0, n);
        for (int h = 0; h < g.size(); ++h) {
            if (!mask_contains(l.rep(c), h)) continue;
            IntMat d = rho[h];
            for (std::size_t i = 0; i < n; ++i) d(i, i) -= 1;
            IntMat stacked = int_zero(eq.rows() + n, n);
            for (std::size_t i = 0; i < eq.rows(); ++i)
                for (std::size_t j = 0; j < n; ++j) stacked(i, j) = eq(i, j);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) stacked(eq.rows() + i, j) = d(i, j);
            eq = std::move(stacked);
        }
        IntMat basis = eq.rows() ? kernel_generators(ring, eq) : int_identity(n);
        if (ring.is_modular()) basis = reduce_entries(ring, std::move(basis));
        m.rank.push_back(basis.cols());
        fixed.push_back(std::move(basis));
    }
    auto express = [&](std::size_t c, const IntMat& v) {
        const SolveResult s = solve_columns(ring, fixed[c], v);
        require(s.ok, ErrorKind::Internal, "vector outside the fixed points");
        return s.x;
    };
    for (const auto& f : ctx.maps) {
        const int a = ctx.orbits[f.to].coset_rep[static_cast<std::size_t>(f.point)];
        m.restriction.push_back(express(f.from, int_multiply(rho[a], fixed[f.to])));
        IntMat sum = int_zero(n, n);
        for (int r : ctx.orbits[f.from].coset_rep)
            if (ctx.set(f.to).act[r][f.point] == 0) sum = scaled_add(std::move(sum), rho[r], 1);
        m.transfer.push_back(express(f.to, int_multiply(sum, fixed[f.from])));
    }
    return m;
}

MackeyReport mackey_validate(const SubgroupLattice& l, const MackeyFunctor& m, int word_length) {
    const GroupTable& g = l.group;
    MackeyContext ctx(l);
    const std::size_t nm = ctx.maps.size();
    require(m.rank.size() == l.class_count(), ErrorKind::Input, "Mackey functor needs a rank for every subgroup class");
    require(m.restriction.size() == nm && m.transfer.size() == nm, ErrorKind::Input,
            "Mackey functor needs restriction and transfer matrices for all " + std::to_string(nm) + " orbit maps");
    for (std::size_t i = 0; i < nm; ++i) {
        const auto& f = ctx.maps[i];
        require(m.restriction[i].rows() == m.rank[f.from] && m.restriction[i].cols() == m.rank[f.to], ErrorKind::Input,
                "restriction matrix of wrong shape for " + describe(l, f));
        require(m.transfer[i].rows() == m.rank[f.to] && m.transfer[i].cols() == m.rank[f.from], ErrorKind::Input,
                "transfer matrix of wrong shape for " + describe(l, f));
    }
    require(word_length >= 1, ErrorKind::Input, "word length must be positive");

    struct Generator {
        std::size_t source, target;
        Span span;
        const IntMat* matrix;
        std::string name;
    };
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < nm; ++i) {
        const auto& f = ctx.maps[i];
        gens.push_back({f.to, f.from, ctx.restriction_span(f), &m.restriction[i], "res(" + describe(l, f) + ")"});
        gens.push_back({f.from, f.to, ctx.transfer_span(f), &m.transfer[i], "tr(" + describe(l, f) + ")"});
    }

    MackeyReport rep;
    rep.generators = gens.size();
    auto value = [&](std::size_t h, std::size_t k, const BurnsideHomElement& e) {
        IntMat out = int_zero(m.rank[k], m.rank[h]);
        for (const auto& [c, coeff] : e.terms) {
            const auto [t, r] = ctx.factor(h, k, c);
            out = scaled_add(std::move(out), int_multiply(m.transfer[t], m.restriction[r]), coeff);
        }
        return reduce_entries(m.ring, std::move(out));
    };
    auto check = [&](std::size_t h, std::size_t k, const Span& s, const IntMat& actual, const std::string& name) {
        ++rep.relations_checked;
        if (reduce_entries(m.ring, actual) != value(h, k, classify(g, s))) rep.violations.push_back(name);
    };

    for (std::size_t c = 0; c < l.class_count(); ++c)
        check(c, c, identity_span(ctx.set(c)), int_identity(m.rank[c]), "id(G/" + l.class_name(c) + ")");

    std::function<void(std::size_t, std::size_t, const Span&, const IntMat&, const std::string&, int)> extend =
        [&](std::size_t src, std::size_t tgt, const Span& s, const IntMat& mat, const std::string& name, int len) {
            check(src, tgt, s, mat, name);
            if (len == word_length) return;
            for (const auto& gen : gens) {
                if (gen.source != tgt) continue;
                extend(src, gen.target, span_compose(g, s, gen.span), int_multiply(*gen.matrix, mat),
                       gen.name + " . " + name, len + 1);
            }
        };
    for (const auto& gen : gens) extend(gen.source, gen.target, gen.span, *gen.matrix, gen.name, 1);
    return rep;
}

}  // namespace cyclotome
