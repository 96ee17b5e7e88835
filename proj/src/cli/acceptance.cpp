#include "cyclotome/cli/acceptance.hpp"

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cyclotome/algebra/constructions.hpp"
#include "cyclotome/burnside/burnside.hpp"
#include "cyclotome/cartier/cartier.hpp"
#include "cyclotome/cartier/tate.hpp"
#include "cyclotome/cli/corpus.hpp"
#include "cyclotome/fdm/de_rham.hpp"
#include "cyclotome/fdm/fdm.hpp"
#include "cyclotome/hodge/spectral.hpp"
#include "cyclotome/linalg/error.hpp"

namespace cyclotome::io {

namespace {

using Dims = std::vector<std::size_t>;

// Collects named sub-checks; the criterion passes when all of them do.
struct Checks {
    CriterionOutcome out{true, json::object()};
    void add(const std::string& name, bool ok, json info = nullptr) {
        out.pass = out.pass && ok;
        json e{{"ok", ok}};
        if (!info.is_null()) e["info"] = std::move(info);
        out.detail[name] = std::move(e);
    }
};

std::vector<Algebra> field_corpus() {
    std::vector<Algebra> out;
    for (const auto& n : corpus_algebra_names()) {
        Algebra a = corpus_algebra(n);
        if (a.ring.is_field()) out.push_back(std::move(a));
    }
    return out;
}

CriterionOutcome bicomplex_identities_all() {
    Checks c;
    for (const auto& n : corpus_algebra_names()) {
        BicomplexReport r;
        try {
            r = bicomplex_identities(corpus_algebra(n), 5);
        } catch (const Error& e) {
            c.add(n, false, {{"error", e.what()}});
            continue;
        }
        json failed = json::array();
        for (const auto& k : r.checks)
            if (!k.ok) failed.push_back(k.name + " q=" + std::to_string(k.q));
        c.add(n, r.ok(), {{"checks", r.checks.size()}, {"cells", r.cells}, {"failed", failed}});
    }
    return c.out;
}

CriterionOutcome connes_exactness() {
    Checks c;
    for (const auto& n : corpus_algebra_names())
        if (!corpus_algebra(n).ring.is_field()) c.out.detail["skipped"].push_back(n + ": cyclic homology needs a field");
    for (const auto& a : field_corpus()) {
        const auto r = cyclic_homology(a, 4);
        c.add(a.name, r.connes.exact(), {{"nodes", r.connes.nodes.size()}});
    }
    return c.out;
}

CriterionOutcome hkr_line() {
    Checks c;
    for (std::uint32_t p : {2u, 5u}) {
        const int W = 6;
        const auto t = hochschild_homology(truncated_polynomials(Ring::prime_field(p), 1, W), 3);
        Dims hh0, hh1, forms0, forms1;
        bool higher_zero = true;
        for (int w = 0; w <= W; ++w) {
            hh0.push_back(t.dim("HH", 0, w));
            hh1.push_back(t.dim("HH", 1, w));
            forms0.push_back(form_basis(1, 0, w).size());
            forms1.push_back(form_basis(1, 1, w).size());
            higher_zero = higher_zero && t.dim("HH", 2, w) == 0 && t.dim("HH", 3, w) == 0;
        }
        c.add("F" + std::to_string(p) + "[x]", hh0 == forms0 && hh1 == forms1 && higher_zero,
              {{"HH0", hh0}, {"HH1", hh1}, {"forms0", forms0}, {"forms1", forms1}, {"higher_zero", higher_zero}});
    }
    return c.out;
}

json morita_tables(const Algebra& a) {
    const int N = 6;
    const auto hc = cyclic_homology(a, 4).table;
    const auto hp = periodic_cyclic(a, N).table;
    return {{"HH", hc.dims("HH", 0, 4)},
            {"HC", hc.dims("HC", 0, 4)},
            {"HP", hp.dims("HP", 0, 1)},
            {"HP_reliable", hp.unreliable.empty()}};
}

CriterionOutcome morita() {
    Checks c;
    for (const Algebra& a : {ground_ring(Ring::rationals()), ground_ring(Ring::prime_field(3)),
                             group_algebra(GroupTable::cyclic(3), Ring::prime_field(2))}) {
        const json x = morita_tables(a), y = morita_tables(matrix_algebra(a, 2));
        c.add(a.name, x == y && x["HP_reliable"] == true, {{"A", x}, {"M2(A)", y}});
    }
    return c.out;
}

CriterionOutcome degeneration() {
    Checks c;
    for (const char* n : {"pathA2", "M2Q", "QxQ"}) {
        const auto r = degeneration_check(corpus_algebra(n), 6, 4);
        c.add(n, r.degenerate && r.pages.transitions_ok,
              {{"degenerate", r.degenerate}, {"hp", json::array({r.hp[0], r.hp[1]})}});
    }
    const auto d = degeneration_check(corpus_algebra("dual_numbers"), 6, 4);
    json info{{"degenerate", d.degenerate}};
    if (d.first_nonzero) info["first_nonzero"] = {{"r", d.first_nonzero->r}, {"p", d.first_nonzero->p},
                                                  {"n", d.first_nonzero->n}, {"d_rank", d.first_nonzero->d_rank}};
    c.add("dual_numbers", !d.degenerate && d.first_nonzero.has_value(), info);
    return c.out;
}

CriterionOutcome fdm_equivalence() {
    Checks c;
    std::mt19937 rng(6);
    int agree = 0, iso = 0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        const std::uint32_t p = t % 2 ? 3 : 2;
        const FDM m = random_torsion_fdm(rng, p, 4);
        const bool axiom = fdm_validate(m).axiom_ii;
        const bool tilde = fdm_tilde(m).iso();
        agree += axiom == tilde;
        iso += tilde;
    }
    c.add("random_torsion", agree == trials, {{"trials", trials}, {"agree", agree}, {"iso", iso}});
    return c.out;
}

CriterionOutcome syntomic_examples() {
    Checks c;
    const Ring W2 = Ring::cyclic(7, 2);
    const ModuleDescriptor z49{W2, 1, {}};
    const auto zero_map = syntomic_cohomology(tate_object(W2, 7, 0), 0).h;
    c.add("cone of the zero map", zero_map == std::vector<ModuleDescriptor>{z49, z49});
    const auto unit = syntomic_cohomology(tate_object(W2, 7, 1), 0).h;
    c.add("unit 1 - p", unit.size() == 2 && unit[0].is_zero() && unit[1].is_zero());
    const auto empty = syntomic_cohomology(tate_object(W2, 7, 1), 2).h;
    c.add("vanishing filtration", empty.size() == 2 && empty[0].is_zero() && empty[1] == z49);
    return c.out;
}

CriterionOutcome mod_p_cartier() {
    Checks c;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto line = cartier_mod_p_check({p, 2, 1, static_cast<int>(2 * p), {}});
        c.add("A1 p=" + std::to_string(p), line.ok(), {{"entries", line.entries.size()}});
        const auto plane = cartier_mod_p_check({p, 2, 2, static_cast<int>(std::min(p + 2, 2 * p)), {}});
        c.add("A2 p=" + std::to_string(p), plane.ok(), {{"entries", plane.entries.size()}});
    }
    return c.out;
}

CriterionOutcome tate_lemma() {
    Checks c;
    for (std::uint32_t p : {2u, 3u})
        for (std::size_t dim : {1u, 2u}) {
            const auto r = tt_le_check(p, dim);
            Dims src, tgt;
            for (const auto& d : r.degrees) {
                src.push_back(d.source);
                tgt.push_back(d.target);
            }
            c.add("p=" + std::to_string(p) + " dim=" + std::to_string(dim), r.ok(), {{"V", src}, {"V^p", tgt}});
        }
    bool periodic = true, acyclic = true;
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int n = 2; n <= 6; ++n) {
            const Ring r = Ring::prime_field(p);
            periodic = periodic && tate_cyclic(trivial_module(r, n, 2), -2, 3).periodic;
            const auto free = tate_cyclic(regular_module(r, n), -2, 3);
            periodic = periodic && free.periodic;
            for (const auto& [i, g] : free.groups) acyclic = acyclic && g.is_zero();
        }
    c.add("2-periodicity", periodic);
    c.add("free modules are acyclic", acyclic);
    return c.out;
}

CriterionOutcome cartier_theorem() {
    Checks c;
    for (const char* n : {"F2[C3]", "F3[C2]"}) {
        const auto r = cartier_dim_check(corpus_algebra(n), 6);
        c.add(std::string("dims ") + n, r.passes(),
              {{"hh", r.hh}, {"hp", json::array({r.hp[0], r.hp[1]})}, {"applicable", r.applicable()}});
    }
    const auto map = cartier_map_explicit(diagonal_quasi_frobenius(GroupTable::cyclic(2), 3), 6);
    c.add("map F3[C2]", map.bijective(), {{"rank", map.rank}, {"hh0", map.hh0}});
    const auto modular = cartier_dim_check(corpus_algebra("F2[C2]"), 4);
    const auto modular_map = cartier_map_explicit(diagonal_quasi_frobenius(GroupTable::cyclic(2), 2), 4);
    c.add("control F2[C2]", !modular.applicable() && !modular_map.bijective(),
          {{"applicable", modular.applicable()}, {"bijective", modular_map.bijective()}, {"notes", modular.notes}});
    return c.out;
}

CriterionOutcome burnside() {
    Checks c;
    const auto c2 = subgroup_classes(GroupTable::cyclic(2));
    const auto s3 = subgroup_classes(GroupTable::symmetric(3));
    c.add("marks C2", table_of_marks(c2) == std::vector<std::vector<std::int64_t>>{{2, 0}, {1, 1}});
    c.add("marks S3", table_of_marks(s3) == std::vector<std::vector<std::int64_t>>{
                                                {6, 0, 0, 0}, {3, 1, 0, 0}, {2, 0, 2, 0}, {1, 1, 1, 1}});
    bool multiplicative = true;
    for (const auto* l : {&c2, &s3}) {
        const GSet pt = point_set(l->group);
        for (const auto& x : hom_basis(l->group, pt, pt))
            for (const auto& y : hom_basis(l->group, pt, pt)) {
                const Span sx = realize(l->group, pt, pt, x), sy = realize(l->group, pt, pt, y);
                const auto mx = marks(*l, sx.middle), my = marks(*l, sy.middle);
                const auto mc = marks(*l, span_compose(l->group, sx, sy).middle);
                for (std::size_t h = 0; h < mc.size(); ++h) multiplicative = multiplicative && mc[h] == mx[h] * my[h];
            }
    }
    c.add("marks multiplicative", multiplicative);
    bool symmetric = true;
    for (std::size_t a = 0; a < s3.class_count(); ++a)
        for (std::size_t b = 0; b < s3.class_count(); ++b)
            symmetric = symmetric && burnside_hom_basis(s3, a, b).size() == burnside_hom_basis(s3, b, a).size();
    c.add("Hom ranks symmetric", symmetric);
    auto functor = burnside_ring_mackey(c2);
    const auto good = mackey_validate(c2, functor);
    c.add("Burnside ring functor", good.ok(), {{"relations", good.relations_checked}});
    const auto maps = orbit_maps(c2);
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps[i].from == 0 && maps[i].to == 1) functor.transfer[i](0, 0) += 1;
    const auto bad = mackey_validate(c2, functor);
    c.add("corrupted transfer rejected", !bad.ok(), {{"violations", bad.violations.size()}});
    return c.out;
}

CriterionOutcome determinism() {
    Checks c;
#ifdef _OPENMP
    const int before = omp_get_max_threads();
    omp_set_num_threads(1);
    const std::string one = corpus_tables().dump(2);
    omp_set_num_threads(4);
    const std::string four = corpus_tables().dump(2);
    omp_set_num_threads(before);
    c.add("threads 1 vs 4", one == four, {{"bytes", one.size()}});
#else
    const std::string one = corpus_tables().dump(2), two = corpus_tables().dump(2);
    c.add("repeated runs", one == two, {{"bytes", one.size()}});
#endif
    return c.out;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> list{
        {1, "bicomplex identities", {"cyclic"}, bicomplex_identities_all, 30},
        {2, "Connes exactness", {"cyclic"}, connes_exactness, 60},
        {3, "HKR on the affine line", {"cyclic", "hkr"}, hkr_line, 30},
        {4, "Morita invariance", {"cyclic", "morita"}, morita, 60},
        {5, "Hodge-to-de Rham degeneration", {"hodge"}, degeneration, 120},
        {6, "FDM axioms vs tilde isomorphism", {"fdm"}, fdm_equivalence, 30},
        {7, "syntomic cones", {"fdm", "syntomic"}, syntomic_examples, 5},
        {8, "mod-p Cartier on A1 and A2", {"fdm", "cartier"}, mod_p_cartier, 60},
        {9, "Tate cohomology of V and its tensor power", {"cartier", "tate"}, tate_lemma, 30},
        {10, "non-commutative Cartier instances", {"cartier"}, cartier_theorem, 300},
        {11, "Burnside category", {"burnside"}, burnside, 30},
        {12, "deterministic corpus report", {"determinism"}, determinism, 1200},
    };
    return list;
}

bool criterion_matches(const Criterion& c, const std::string& filter) {
    if (filter.empty()) return true;
    if (filter.find_first_not_of("0123456789") == std::string::npos) return filter == std::to_string(c.id);
    for (const auto& t : c.tags)
        if (t == filter) return true;
    return c.name.find(filter) != std::string::npos;
}

json corpus_tables() {
    json algebras = json::array();
    for (const auto& n : corpus_algebra_names()) {
        const Algebra a = corpus_algebra(n);
        json e{{"name", n}, {"ring", ring_label(a.ring)}, {"dim", a.dim()}, {"HH", to_json(hochschild_homology(a, 3))}};
        if (a.ring.is_field()) {
            e["HC"] = to_json(cyclic_homology(a, 3).table);
            e["HP"] = to_json(periodic_cyclic(a, 6).table);
        }
        algebras.push_back(std::move(e));
    }
    json groups = json::array();
    for (const char* g : {"C2", "C3", "S3"}) {
        const auto l = subgroup_classes(group_preset(g));
        groups.push_back({{"group", g}, {"marks", table_of_marks(l)}});
    }
    json tate = json::array();
    for (std::uint32_t p : {2u, 3u})
        for (int n : {2, 3, 4}) {
            const auto t = tate_cyclic(trivial_module(Ring::prime_field(p), n, 1), 0, 3);
            json dims = json::array();
            for (const auto& [i, m] : t.groups) dims.push_back(m.rank);
            tate.push_back({{"p", p}, {"n", n}, {"dims", dims}});
        }
    return {{"schema", "cyclotome.corpus/1"}, {"algebras", algebras}, {"burnside", groups}, {"tate", tate}};
}

}  // namespace cyclotome::io
