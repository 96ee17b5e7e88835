#include "cyclotome/cli/jobs.hpp"

#include <functional>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cyclotome/algebra/constructions.hpp"
#include "cyclotome/burnside/burnside.hpp"
#include "cyclotome/cartier/cartier.hpp"
#include "cyclotome/cartier/tate.hpp"
#include "cyclotome/cli/acceptance.hpp"
#include "cyclotome/cli/corpus.hpp"
#include "cyclotome/hodge/spectral.hpp"
#include "cyclotome/linalg/error.hpp"

namespace cyclotome::io {

namespace {

using Handler = std::function<json(const JobSpec&, bool& failed)>;

int need(const std::optional<int>& v, int fallback, const char* name, int lo, int hi) {
    const int x = v.value_or(fallback);
    require(x >= lo && x <= hi, ErrorKind::Input,
            std::string("--") + name + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

int degree_bound(const JobSpec& s, int fallback) { return need(s.N, fallback, "N", 0, 64); }

EngineOptions engine(const JobSpec& s) {
    EngineOptions o;
    if (s.unnormalized) {
        o.chains.normalized = false;
        o.route = Route::Bicomplex;
    }
    return o;
}

std::uint32_t single_prime(const JobSpec& s, std::uint32_t fallback) {
    require(s.primes.size() <= 1, ErrorKind::Input, "this command takes one prime");
    const std::uint32_t p = s.primes.empty() ? fallback : s.primes.front();
    require(is_prime(p), ErrorKind::Input, "not a prime: " + std::to_string(p));
    return p;
}

json algebra_json(const Algebra& a) {
    json j{{"name", a.name}, {"ring", ring_label(a.ring)}, {"dim", a.dim()}};
    if (a.flags.smooth) j["smooth"] = *a.flags.smooth;
    if (a.flags.proper) j["proper"] = *a.flags.proper;
    if (!a.flags.justification.empty()) j["justification"] = a.flags.justification;
    return j;
}

json pair_json(const std::array<std::size_t, 2>& a) { return json::array({a[0], a[1]}); }

json descriptors(const std::vector<ModuleDescriptor>& v) {
    json out = json::array();
    for (const auto& m : v) out.push_back(to_json(m));
    return out;
}

// ---- cyclic engine

json run_hh(const JobSpec& s, bool&) {
    const Algebra a = resolve_algebra(s.algebra);
    const int N = degree_bound(s, 4);
    return {{"algebra", algebra_json(a)}, {"N", N}, {"table", to_json(hochschild_homology(a, N, engine(s)))}};
}

json run_hhcoh(const JobSpec& s, bool&) {
    const Algebra a = resolve_algebra(s.algebra);
    const int N = degree_bound(s, 4);
    return {{"algebra", algebra_json(a)}, {"N", N}, {"table", to_json(hochschild_cohomology(a, N))}};
}

json connes_json(const ConnesReport& c) {
    json nodes = json::array();
    for (const auto& n : c.nodes) {
        json j{{"degree", n.degree}, {"node", n.node}};
        if (n.split.weight >= 0) j["weight"] = n.split.weight;
        if (n.split.sector >= 0) j["sector"] = n.split.sector;
        j["kernel"] = n.kernel;
        j["image"] = n.image;
        j["exact"] = n.ok();
        nodes.push_back(std::move(j));
    }
    return {{"exact", c.exact()}, {"nodes", nodes}};
}

json run_hc(const JobSpec& s, bool& failed) {
    const Algebra a = resolve_algebra(s.algebra);
    const int N = degree_bound(s, 4);
    const auto r = cyclic_homology(a, N, engine(s));
    failed = !r.connes.exact();
    return {{"algebra", algebra_json(a)}, {"N", N}, {"table", to_json(r.table)}, {"connes_exact", r.connes.exact()}};
}

json run_connes(const JobSpec& s, bool& failed) {
    const Algebra a = resolve_algebra(s.algebra);
    const int N = degree_bound(s, 4);
    const auto r = cyclic_homology(a, N, engine(s));
    failed = !r.connes.exact();
    return {{"algebra", algebra_json(a)}, {"N", N}, {"connes", connes_json(r.connes)}};
}

json run_hp(const JobSpec& s, bool&) {
    const Algebra a = resolve_algebra(s.algebra);
    const int N = degree_bound(s, 6);
    const auto r = periodic_cyclic(a, N, engine(s));
    json certs = json::array();
    for (const auto& c : r.certificates) {
        json j{{"parity", c.parity}};
        if (c.split.weight >= 0) j["weight"] = c.split.weight;
        if (c.split.sector >= 0) j["sector"] = c.split.sector;
        j["stabilized"] = c.stabilized;
        j["degree"] = c.degree;
        j["iterations"] = c.iterations;
        j["value"] = c.value;
        certs.push_back(std::move(j));
    }
    return {{"algebra", algebra_json(a)}, {"N", N}, {"table", to_json(r.table)}, {"certificates", certs}};
}

json run_hcminus(const JobSpec& s, bool& failed) {
    const Algebra a = resolve_algebra(s.algebra);
    const int N = degree_bound(s, 4);
    const int C = need(s.C, 4, "C", 0, 64);
    const auto r = negative_cyclic(a, N, C, engine(s));
    failed = !r.sequence_ok;
    return {{"algebra", algebra_json(a)}, {"N", N},
            {"C", C},
            {"lowest_degree", r.lo},
            {"column_window", r.column_window},
            {"sequence_ok", r.sequence_ok},
            {"table", to_json(r.table)}};
}

// ---- Hodge filtration

json pages_json(const SpectralPages& p) {
    json entries = json::array();
    for (const auto& [key, e] : p.entries)
        if (e.dim || e.d_rank)
            entries.push_back({{"r", e.r}, {"p", e.p}, {"n", e.n}, {"dim", e.dim}, {"d_rank", e.d_rank}});
    return {{"N", p.N},
            {"C", p.C},
            {"r_max", p.r_max},
            {"p_max", p.p_max},
            {"transitions_ok", p.transitions_ok},
            {"e1_matches_hh", p.e1_matches_hh},
            {"entries", entries}};
}

json run_hodge(const JobSpec& s, bool& failed) {
    const Algebra a = resolve_algebra(s.algebra);
    const int N = degree_bound(s, 4);
    const int rmax = need(s.rmax, 2, "rmax", 1, 16);
    const int C = need(s.C, rmax + 2, "C", 1, 64);
    const auto f = hodge_filtration(a, N, C, engine(s));
    const auto pages = spectral_pages(a, N, rmax, C, engine(s));
    failed = !f.ok() || !pages.transitions_ok || !pages.e1_matches_hh;
    return {{"algebra", algebra_json(a)},
            {"filtration",
             {{"N", f.N},
              {"C", f.C},
              {"cells", f.cells},
              {"preserves_filtration", f.preserves_filtration},
              {"shift_bijective", f.shift_bijective},
              {"shift_chain_map", f.shift_chain_map}}},
            {"pages", pages_json(pages)}};
}

json run_degenerate(const JobSpec& s, bool& failed) {
    const Algebra a = resolve_algebra(s.algebra);
    const int N = degree_bound(s, 6);
    const int rmax = need(s.rmax, 4, "rmax", 1, 16);
    const auto r = degeneration_check(a, N, rmax, s.C.value_or(-1), engine(s));
    const bool expected = a.flags.smooth.value_or(false) && a.flags.proper.value_or(false);
    failed = (expected && !r.degenerate) || (r.abutment_checked && !r.abutment_ok) || !r.pages.transitions_ok;
    json j{{"algebra", algebra_json(a)},
           {"N", N},
           {"r_max", rmax},
           {"degenerate", r.degenerate},
           {"degeneration_expected", expected}};
    if (r.first_nonzero)
        j["first_nonzero"] = {{"r", r.first_nonzero->r},
                              {"p", r.first_nonzero->p},
                              {"n", r.first_nonzero->n},
                              {"d_rank", r.first_nonzero->d_rank}};
    j["abutment_checked"] = r.abutment_checked;
    j["abutment_ok"] = r.abutment_ok;
    j["hp"] = pair_json(r.hp);
    j["e1_sum"] = pair_json(r.e1_sum);
    j["last_page_sum"] = pair_json(r.last_page_sum);
    j["pages"] = pages_json(r.pages);
    return j;
}

// ---- FDM

json run_fdm_check(const JobSpec& s, bool& failed) {
    const FDM m = resolve_fdm(s.fdm);
    const auto v = fdm_validate(m);
    failed = !v.ok();
    return {{"fdm", s.fdm}, {"validation", to_json(v)}, {"descriptor", to_json(describe(m))}};
}

json run_fdm_tilde(const JobSpec& s, bool&) {
    const FDM m = resolve_fdm(s.fdm);
    const auto t = fdm_tilde(m);
    return {{"fdm", s.fdm},
            {"tilde", to_json(t.tilde)},
            {"has_phi", t.has_phi},
            {"surjective", t.surjective},
            {"injective", t.injective},
            {"iso", t.iso()},
            {"axiom_ii", fdm_validate(m).axiom_ii}};
}

json run_syntomic(const JobSpec& s, bool&) {
    const FDM m = resolve_fdm(s.fdm);
    const auto [lo, hi] = s.window.value_or(std::pair{m.a - 1, m.b});
    require(lo <= hi && hi - lo <= 64, ErrorKind::Input, "--window a..b needs a <= b and at most 65 values");
    json rows = json::array();
    for (int j = lo; j <= hi; ++j) rows.push_back({{"j", j}, {"h", descriptors(syntomic_cohomology(m, j).h)}});
    return {{"fdm", s.fdm}, {"cohomology", rows}};
}

json run_gfdm_check(const JobSpec& s, bool& failed) {
    const auto m = resolve_gfdm(s.fdm, s.primes, s.precision.value_or(2));
    const auto v = gfdm_validate(m);
    failed = !v.ok();
    json per = json::object();
    for (const auto& [p, ok] : v.per_prime) per[std::to_string(p)] = ok;
    json fails = json::array();
    for (const auto& f : v.failures) fails.push_back({{"p", f.p}, {"i", f.i}, {"j", f.j}, {"what", f.what}});
    return {{"fdm", s.fdm}, {"ok", v.ok()}, {"per_prime", per}, {"failures", fails}};
}

json run_tc_tower(const JobSpec& s, bool&) {
    const auto m = resolve_gfdm(s.fdm, s.primes, s.precision.value_or(3));
    json towers = json::array();
    for (const auto& t : tc_cone_tower(m)) {
        json levels = json::array();
        for (const auto& l : t.levels)
            levels.push_back({{"j", l.j}, {"h0", to_json(l.h0)}, {"h1", to_json(l.h1)},
                              {"h0_onto_previous", l.h0_onto_previous}});
        towers.push_back({{"p", t.p}, {"mittag_leffler", t.mittag_leffler}, {"levels", levels}});
    }
    return {{"fdm", s.fdm}, {"towers", towers}};
}

DeRhamData de_rham_input(const JobSpec& s) {
    if (!s.input.empty()) return parse_de_rham(load_file(s.input));
    DeRhamData d;
    d.p = single_prime(s, 2);
    d.k = need(s.precision, 2, "precision", 1, 12);
    d.variables = need(s.vars, 1, "vars", 1, 4);
    d.window = need(s.N, static_cast<int>(2 * d.p), "N", 0, 32);
    return d;
}

json run_derham_fdm(const JobSpec& s, bool& failed) {
    const auto r = de_rham_fdm(de_rham_input(s));
    failed = !r.divisible;
    json coh = json::array();
    for (const auto& [key, m] : r.cohomology) coh.push_back({{"q", key.first}, {"d", key.second}, {"module", to_json(m)}});
    json phi = json::array();
    for (const auto& [key, m] : r.phi) phi.push_back({{"q", key.first}, {"d", key.second}, {"columns", columns_json(m)}});
    json val = json::object();
    for (const auto& [q, v] : r.min_valuation) val[std::to_string(q)] = v;
    return {{"p", r.data.p},        {"k", r.data.k},   {"variables", r.data.variables}, {"window", r.data.window},
            {"divisible", r.divisible}, {"min_valuation", val}, {"cohomology", coh},     {"phi", phi}};
}

json run_cartier_modp(const JobSpec& s, bool& failed) {
    const auto d = de_rham_input(s);
    const auto r = cartier_mod_p_check(d);
    failed = !r.ok();
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"q", e.q}, {"d", e.d}, {"source", e.source}, {"target", e.target}, {"rank", e.rank},
                           {"closed", e.closed}, {"ok", e.ok()}});
    return {{"p", d.p},
            {"variables", d.variables},
            {"window", d.window},
            {"ok", r.ok()},
            {"inconclusive", r.inconclusive},
            {"off_multiples_vanish", r.off_multiples_vanish},
            {"entries", entries}};
}

// ---- Tate cohomology and the Cartier comparison

json tate_json(const TateTable& t) {
    json groups = json::array();
    for (const auto& [i, m] : t.groups) groups.push_back({{"degree", i}, {"module", to_json(m)}});
    return {{"lo", t.lo}, {"hi", t.hi}, {"periodic", t.periodic}, {"groups", groups}};
}

json run_tate(const JobSpec& s, bool& failed) {
    const Ring ring = parse_ring(s.ring.empty() ? "F2" : s.ring);
    const int n = need(s.order, 2, "n", 1, 64);
    const std::string kind = s.module.empty() ? "trivial" : s.module;
    require(kind == "trivial" || kind == "regular", ErrorKind::Input, "--module must be trivial or regular");
    const CyclicModule v =
        kind == "trivial" ? trivial_module(ring, n, static_cast<std::size_t>(need(s.dim, 1, "dim", 1, 16)))
                          : regular_module(ring, n);
    const auto [lo, hi] = s.window.value_or(std::pair{0, 3});
    const auto t = tate_cyclic(v, lo, hi);
    failed = !t.periodic;
    return {{"ring", ring_label(ring)}, {"n", n}, {"module", kind}, {"dim", v.dim()}, {"table", tate_json(t)}};
}

json run_ttle(const JobSpec& s, bool& failed) {
    const std::vector<std::uint32_t> primes = s.primes.empty() ? std::vector<std::uint32_t>{2, 3} : s.primes;
    const int dim = need(s.dim, 2, "dim", 1, 3);
    const auto [lo, hi] = s.window.value_or(std::pair{0, 3});
    json rows = json::array();
    for (auto p : primes) {
        require(is_prime(p), ErrorKind::Input, "not a prime: " + std::to_string(p));
        for (int d = 1; d <= dim; ++d) {
            const auto c = tt_le_check(p, static_cast<std::size_t>(d), lo, hi);
            failed = failed || !c.ok();
            json degrees = json::array();
            for (const auto& e : c.degrees)
                degrees.push_back({{"degree", e.degree}, {"source", e.source}, {"target", e.target},
                                   {"cocycles", e.image.cocycles}, {"image_rank", e.image.rank},
                                   {"additive", e.additive}, {"iso", e.iso()}});
            rows.push_back({{"p", p}, {"dim", d}, {"ok", c.ok()}, {"degrees", degrees}});
        }
    }
    return {{"comparisons", rows}};
}

json qfrob_json(const QuasiFrobeniusReport& r) {
    return {{"ok", r.ok()},
            {"algebra_map", r.algebra_map},
            {"equivariant", r.equivariant},
            {"tate", r.tate},
            {"failures", r.failures}};
}

json run_qfrob(const JobSpec& s, bool& failed) {
    const GroupTable g = resolve_group(s.group.empty() ? "C2" : s.group);
    const std::uint32_t p = single_prime(s, 3);
    const auto q = diagonal_quasi_frobenius(g, p);
    const auto r = quasi_frobenius_validate(q, need(s.N, 4, "N", 1, 16));
    failed = !r.ok();
    return {{"source", algebra_json(q.source)}, {"p", p}, {"target_dim", q.target.dim()}, {"validation", qfrob_json(r)}};
}

json run_sectors(const JobSpec& s, bool& failed) {
    Algebra b = resolve_algebra(s.algebra);
    if (!s.group.empty()) b = with_trivial_action(std::move(b), resolve_group(s.group));
    const int N = degree_bound(s, 3);
    const auto r = twisted_sectors(b, N);
    failed = !r.partition || !r.stable || !r.sums_match;
    json j{{"algebra", r.algebra},   {"classes", r.classes},     {"cells", r.cells},
           {"partition", r.partition}, {"stable", r.stable},     {"sums_match", r.sums_match},
           {"hh", to_json(r.hh)},      {"hc", to_json(r.hc)},     {"hp", to_json(r.hp)}};
    if (b.ring.kind() == RingKind::PrimeField && !s.group.empty() &&
        resolve_group(s.group) == GroupTable::cyclic(static_cast<int>(b.ring.prime()))) {
        json checks = json::array();
        for (const auto& c : sector_iso_checks(resolve_algebra(s.algebra), std::max(N, 6))) {
            json e{{"name", c.name},
                   {"lhs", pair_json(c.lhs)},
                   {"rhs", pair_json(c.rhs)},
                   {"lhs_reliable", c.lhs_reliable},
                   {"rhs_reliable", c.rhs_reliable},
                   {"verdict", verdict_name(c.verdict)}};
            if (!c.note.empty()) e["note"] = c.note;
            checks.push_back(std::move(e));
        }
        j["sector_iso_checks"] = checks;
    }
    return j;
}

json run_cartier_dims(const JobSpec& s, bool&) {
    const Algebra a = resolve_algebra(s.algebra);
    const int N = degree_bound(s, 6);
    const auto r = cartier_dim_check(a, N);
    // hypothesis failures mark the theorem as not applicable; that is not a failed check
    return {{"algebra", algebra_json(a)},
            {"p", r.p},
            {"N", r.N},
            {"applicable", r.applicable()},
            {"passes", r.passes()},
            {"smooth_flag", r.smooth_flag},
            {"lift_ok", r.lift_ok},
            {"cohomology_vanishes", r.cohomology_vanishes},
            {"hh", r.hh},
            {"hh_pattern", pair_json(r.hh_pattern)},
            {"hp", pair_json(r.hp)},
            {"hp_reliable", r.hp_reliable},
            {"window_ok", r.window_ok},
            {"patterns_equal", r.patterns_equal},
            {"notes", r.notes}};
}

json run_cartier_map(const JobSpec& s, bool&) {
    const std::string group = s.group.empty() ? "C2" : s.group;
    const std::uint32_t p = single_prime(s, 3);
    const auto r = cartier_map_explicit(diagonal_quasi_frobenius(resolve_group(group), p), degree_bound(s, 6));
    return {{"group_algebra", "F" + std::to_string(p) + "[" + group + "]"},
            {"p", p},
            {"bijective", r.bijective()},
            {"complete", r.complete()},
            {"hh0", r.hh0},
            {"rank", r.rank},
            {"well_defined", r.well_defined},
            {"hp", pair_json(r.hp)},
            {"hp_reliable", r.hp_reliable},
            {"transported", r.transported},
            {"higher_vanish", r.higher_vanish},
            {"matrix", r.matrix},
            {"notes", r.notes}};
}

// ---- Burnside category

json lattice_json(const SubgroupLattice& l) {
    json classes = json::array();
    for (std::size_t c = 0; c < l.class_count(); ++c) {
        json rep = json::array();
        for (int e = 0; e < l.group.size(); ++e)
            if (mask_contains(l.rep(c), e)) rep.push_back(l.group.label(e));
        json below = json::array();
        for (std::size_t d = 0; d < l.class_count(); ++d)
            if (d != c && l.below[d][c]) below.push_back(d);
        classes.push_back({{"index", c}, {"name", l.class_name(c)}, {"order", mask_order(l.rep(c))},
                           {"conjugates", l.classes[c].size()}, {"representative", rep}, {"contains", below}});
    }
    return {{"order", l.group.size()}, {"subgroups", l.subgroups.size()}, {"classes", classes}};
}

std::size_t class_arg(const SubgroupLattice& l, const std::optional<int>& v, const char* name) {
    require(v.has_value(), ErrorKind::Input, std::string("--") + name + " (a subgroup class index) is required");
    require(*v >= 0 && static_cast<std::size_t>(*v) < l.class_count(), ErrorKind::Input,
            std::string("--") + name + " out of range");
    return static_cast<std::size_t>(*v);
}

json run_burnside(const JobSpec& s, bool& failed) {
    const SubgroupLattice l = subgroup_classes(resolve_group(s.group.empty() ? "C2" : s.group));
    const GroupTable& g = l.group;
    if (s.sub == "marks") {
        const auto t = table_of_marks(l);
        bool triangular = true;
        for (std::size_t k = 0; k < t.size(); ++k)
            for (std::size_t h = 0; h < t.size(); ++h)
                if ((h > k && t[k][h] != 0) || (h == k && t[k][h] == 0)) triangular = false;
        failed = !triangular;
        return {{"lattice", lattice_json(l)}, {"marks", t}, {"triangular", triangular}};
    }
    if (s.sub == "hom") {
        json rows = json::array();
        bool symmetric = true;
        for (std::size_t a = 0; a < l.class_count(); ++a)
            for (std::size_t b = 0; b < l.class_count(); ++b) {
                if (s.h1 && static_cast<int>(a) != *s.h1) continue;
                if (s.h2 && static_cast<int>(b) != *s.h2) continue;
                const auto basis = burnside_hom_basis(l, a, b);
                symmetric = symmetric && basis.size() == burnside_hom_basis(l, b, a).size();
                const std::size_t ny = orbit(g, l.rep(b)).set.size;
                json spans = json::array();
                for (const auto& c : basis) spans.push_back(to_json(c, ny, g));
                rows.push_back({{"h1", a}, {"h2", b}, {"rank", basis.size()}, {"basis", spans}});
            }
        require(!rows.empty(), ErrorKind::Input, "--h1/--h2 out of range");
        failed = !symmetric;
        return {{"lattice", lattice_json(l)}, {"homs", rows}, {"symmetric", symmetric}};
    }
    if (s.sub == "compose") {
        const std::size_t a = class_arg(l, s.h1, "h1"), b = class_arg(l, s.h2, "h2"), c = class_arg(l, s.h3, "h3");
        const GSet X = orbit(g, l.rep(a)).set, Y = orbit(g, l.rep(b)).set, Z = orbit(g, l.rep(c)).set;
        const auto left = burnside_hom_basis(l, a, b), right = burnside_hom_basis(l, b, c),
                   out = burnside_hom_basis(l, a, c);
        json table = json::array();
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j) {
                BurnsideHomElement x, y;
                x.add(left[i], 1);
                y.add(right[j], 1);
                json terms = json::array();
                for (const auto& [cls, k] : compose(g, X, Y, Z, x, y).terms) {
                    const auto it = std::find(out.begin(), out.end(), cls);
                    terms.push_back({{"basis", it - out.begin()}, {"coeff", k}});
                }
                table.push_back({{"first", i}, {"second", j}, {"composite", terms}});
            }
        json bases = json::object();
        auto basis_json = [&](const std::vector<SpanClass>& v, const GSet& t) {
            json arr = json::array();
            for (const auto& cls : v) arr.push_back(to_json(cls, t.size, g));
            return arr;
        };
        bases["first"] = basis_json(left, Y);
        bases["second"] = basis_json(right, Z);
        bases["composite"] = basis_json(out, Z);
        return {{"h1", a}, {"h2", b}, {"h3", c}, {"bases", bases}, {"table", table}};
    }
    fail(ErrorKind::Input, "burnside needs one of: marks, hom, compose");
}

json run_mackey_check(const JobSpec& s, bool& failed) {
    const SubgroupLattice l = subgroup_classes(resolve_group(s.group.empty() ? "C2" : s.group));
    const std::string f = s.functor.empty() ? "burnside" : s.functor;
    MackeyFunctor m;
    if (f == "burnside") {
        m = burnside_ring_mackey(l);
    } else if (f.rfind("perm:", 0) == 0) {
        std::size_t c = 0;
        try {
            c = std::stoul(f.substr(5));
        } catch (const std::exception&) {
            fail(ErrorKind::Input, "bad functor: " + f);
        }
        require(c < l.class_count(), ErrorKind::Input, "permutation module class out of range");
        const GSet x = orbit(l.group, l.rep(c)).set;
        std::vector<IntMat> rho;
        for (int e = 0; e < l.group.size(); ++e) {
            IntMat r = int_zero(x.size, x.size);
            for (std::size_t i = 0; i < x.size; ++i) r(static_cast<std::size_t>(x.act[e][i]), i) = 1;
            rho.push_back(std::move(r));
        }
        m = fixed_point_mackey(l, parse_ring(s.ring.empty() ? "Z" : s.ring), rho);
    } else {
        m = parse_mackey(load_file(f), l);
    }
    const auto r = mackey_validate(l, m, need(s.N, 3, "N", 1, 4));
    failed = !r.ok();
    return {{"functor", f},
            {"ring", ring_label(m.ring)},
            {"rank", m.rank},
            {"generators", r.generators},
            {"relations_checked", r.relations_checked},
            {"ok", r.ok()},
            {"violations", r.violations}};
}

// ---- corpus suites

json run_corpus(const JobSpec& s, bool& failed) {
    require(!s.sub.empty(), ErrorKind::Input, "corpus needs a suite name: acceptance or tables");
    if (s.sub == "tables") return corpus_tables();
    require(s.sub == "acceptance", ErrorKind::Input, "unknown suite: " + s.sub);
    json results = json::array();
    int passed = 0, total = 0;
    for (const auto& c : acceptance_criteria()) {
        if (!criterion_matches(c, s.filter)) continue;
        const auto o = c.run();
        ++total;
        passed += o.pass;
        results.push_back({{"id", c.id}, {"name", c.name}, {"pass", o.pass}, {"detail", o.detail}});
    }
    require(total > 0, ErrorKind::Input, "filter selects no criteria: " + s.filter);
    failed = passed != total;
    return {{"suite", s.sub}, {"passed", passed}, {"failed", total - passed}, {"results", results}};
}

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table{
        {"hh", run_hh},
        {"hhcoh", run_hhcoh},
        {"hc", run_hc},
        {"hp", run_hp},
        {"hcminus", run_hcminus},
        {"connes", run_connes},
        {"hodge", run_hodge},
        {"degenerate", run_degenerate},
        {"fdm-check", run_fdm_check},
        {"fdm-tilde", run_fdm_tilde},
        {"syntomic", run_syntomic},
        {"gfdm-check", run_gfdm_check},
        {"tc-tower", run_tc_tower},
        {"derham-fdm", run_derham_fdm},
        {"cartier-modp", run_cartier_modp},
        {"tate", run_tate},
        {"ttle", run_ttle},
        {"qfrob", run_qfrob},
        {"sectors", run_sectors},
        {"cartier-dims", run_cartier_dims},
        {"cartier-map", run_cartier_map},
        {"burnside", run_burnside},
        {"mackey-check", run_mackey_check},
        {"corpus", run_corpus},
    };
    return table;
}

const char* status_name(int code) {
    switch (code) {
        case exit_ok: return "ok";
        case exit_check_failed: return "check-failed";
        case exit_input: return "input-error";
        default: return "resource-error";
    }
}

int exit_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::Input:
        case ErrorKind::Validation:
        case ErrorKind::UnsupportedRing: return exit_input;
        case ErrorKind::Resource: return exit_resource;
        default: return exit_check_failed;
    }
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : handlers()) n.push_back(k);
        return n;
    }();
    return names;
}

json job_echo(const JobSpec& s) {
    json j{{"command", s.command}};
    auto str = [&](const char* k, const std::string& v) {
        if (!v.empty()) j[k] = v;
    };
    auto num = [&](const char* k, const std::optional<int>& v) {
        if (v) j[k] = *v;
    };
    str("sub", s.sub);
    str("algebra", s.algebra);
    str("fdm", s.fdm);
    str("group", s.group);
    str("input", s.input);
    str("functor", s.functor);
    str("module", s.module);
    str("ring", s.ring);
    str("filter", s.filter);
    num("N", s.N);
    num("C", s.C);
    num("rmax", s.rmax);
    num("precision", s.precision);
    num("n", s.order);
    num("dim", s.dim);
    num("vars", s.vars);
    num("h1", s.h1);
    num("h2", s.h2);
    num("h3", s.h3);
    if (s.window) j["window"] = json::array({s.window->first, s.window->second});
    if (!s.primes.empty()) j["primes"] = s.primes;
    if (s.unnormalized) j["unnormalized"] = true;
    return j;
}

Report run_job(const JobSpec& spec) {
    Report r;
    r.body = json{{"schema", "cyclotome.report/1"}, {"tool", tool_version}, {"job", job_echo(spec)}};
    std::string error;
    json result;
    try {
        const auto it = handlers().find(spec.command);
        require(it != handlers().end(), ErrorKind::Input, "unknown command: " + spec.command);
#ifdef _OPENMP
        if (spec.threads > 0) omp_set_num_threads(spec.threads);
#endif
        bool failed = false;
        result = it->second(spec, failed);
        r.exit_code = failed ? exit_check_failed : exit_ok;
    } catch (const Error& e) {
        r.exit_code = exit_for(e.kind());
        error = e.what();
    } catch (const json::exception& e) {
        r.exit_code = exit_input;
        error = e.what();
    } catch (const std::bad_alloc&) {
        r.exit_code = exit_resource;
        error = "out of memory";
    }
    r.body["status"] = status_name(r.exit_code);
    if (!error.empty())
        r.body["error"] = error;
    else
        r.body["result"] = std::move(result);
    return r;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cyclotome::io
