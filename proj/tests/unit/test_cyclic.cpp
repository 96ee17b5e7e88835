#include <doctest.h>

#include "cyclotome/algebra/constructions.hpp"
#include "cyclotome/cyclic/homology.hpp"
#include "cyclotome/fdm/de_rham.hpp"

using namespace cyclotome;

namespace {

using Dims = std::vector<std::size_t>;

Algebra dual_numbers(const Ring& r) {
    AlgebraSpec s;
    s.name = "dual";
    s.ring = r;
    s.basis = {"1", "e"};
    s.unit = {{"1", 1}};
    s.mult = {{"1", "1", "1", 1}, {"1", "e", "e", 1}, {"e", "1", "e", 1}};
    return build_algebra(s);
}

EngineOptions unnormalized(Route route = Route::Mixed) {
    EngineOptions o;
    o.chains.normalized = false;
    o.route = route;
    return o;
}

}  // namespace

TEST_CASE("ground field") {
    Algebra q = ground_ring(Ring::rationals());
    CHECK(hochschild_homology(q, 3).dims("HH", 0, 3) == Dims{1, 0, 0, 0});
    auto c = cyclic_homology(q, 6);
    CHECK(c.table.dims("HC", 0, 6) == Dims{1, 0, 1, 0, 1, 0, 1});
    CHECK(c.connes.exact());
    for (const auto& s : c.s_maps)
        if (s.degree % 2 == 0) CHECK(s.iso());
    auto hp = periodic_cyclic(q, 8);
    CHECK(hp.stabilized());
    CHECK(hp.table.dims("HP", 0, 1) == Dims{1, 0});
}

TEST_CASE("dual numbers over Q") {
    Algebra d = dual_numbers(Ring::rationals());
    CHECK(hochschild_homology(d, 5).dims("HH", 0, 5) == Dims{2, 1, 1, 1, 1, 1});
    CHECK(hochschild_cohomology(d, 4).dims("HH^", 0, 4) == Dims{2, 1, 1, 1, 1});
    auto c = cyclic_homology(d, 6);
    CHECK(c.table.dims("HC", 0, 6) == Dims{2, 0, 2, 0, 2, 0, 2});
    CHECK(c.connes.exact());
    auto hp = periodic_cyclic(d, 8);
    CHECK(hp.stabilized());
    CHECK(hp.table.dims("HP", 0, 1) == Dims{1, 0});
}

TEST_CASE("normalized and unnormalized chains agree") {
    for (const Algebra& a : {group_algebra(GroupTable::cyclic(2), Ring::prime_field(3)), dual_numbers(Ring::prime_field(2)),
                             path_algebra({2, {{0, 1}}, {}}, Ring::rationals())}) {
        CAPTURE(a.name);
        const auto n = hochschild_homology(a, 4);
        const auto u = hochschild_homology(a, 4, unnormalized());
        CHECK(n.dims("HH", 0, 4) == u.dims("HH", 0, 4));
        CHECK(cyclic_homology(a, 4).table.dims("HC", 0, 4) == cyclic_homology(a, 4, unnormalized()).table.dims("HC", 0, 4));
    }
    CHECK(hochschild_homology(group_algebra(GroupTable::cyclic(2), Ring::prime_field(3)), 3).dims("HH", 0, 3) ==
          Dims{2, 0, 0, 0});
}

TEST_CASE("relative and absolute chains agree") {
    for (const Algebra& a : {matrix_algebra(ground_ring(Ring::rationals()), 2), path_algebra({2, {{0, 1}}, {}}, Ring::rationals()),
                             direct_product(dual_numbers(Ring::rationals()), ground_ring(Ring::rationals()))}) {
        CAPTURE(a.name);
        EngineOptions abs;
        abs.chains.relative = false;
        CHECK(hochschild_homology(a, 3).dims("HH", 0, 3) == hochschild_homology(a, 3, abs).dims("HH", 0, 3));
        CHECK(cyclic_homology(a, 4).table.dims("HC", 0, 4) == cyclic_homology(a, 4, abs).table.dims("HC", 0, 4));
    }
}

TEST_CASE("mixed and bicomplex routes agree") {
    for (const Algebra& a : {dual_numbers(Ring::rationals()), dual_numbers(Ring::prime_field(2)),
                             group_algebra(GroupTable::cyclic(3), Ring::prime_field(3)),
                             group_algebra(GroupTable::symmetric(3), Ring::prime_field(2))}) {
        CAPTURE(a.name);
        const int N = a.dim() > 3 ? 3 : 5;
        auto m = cyclic_homology(a, N);
        auto b = cyclic_homology(a, N, {{}, Route::Bicomplex});
        CHECK(m.table.dims("HC", 0, N) == b.table.dims("HC", 0, N));
        CHECK(m.table.dims("HH", 0, N) == b.table.dims("HH", 0, N));
        CHECK(m.connes.exact());
        CHECK(b.connes.exact());
    }
}

TEST_CASE("bicomplex identities hold") {
    for (const Algebra& a : {dual_numbers(Ring::integers()), group_algebra(GroupTable::symmetric(3), Ring::prime_field(3)),
                             dg_smoke_algebra(Ring::rationals()), matrix_algebra(ground_ring(Ring::cyclic(2, 3)), 2)}) {
        CAPTURE(a.name);
        auto r = bicomplex_identities(a, 3);
        CHECK(r.ok());
        CHECK(r.cells > 0);
    }
}

TEST_CASE("truncated polynomial weights match the de Rham count") {
    const int W = 6;
    Algebra p = truncated_polynomials(Ring::prime_field(3), 1, W);
    auto t = hochschild_homology(p, 3);
    for (int w = 0; w <= W; ++w) {
        CAPTURE(w);
        CHECK(t.dim("HH", 0, w) == 1);
        CHECK(t.dim("HH", 1, w) == (w >= 1 ? 1u : 0u));
        CHECK(t.dim("HH", 2, w) == 0);
    }
    CHECK_FALSE(t.has({"HH", 0, -1, -1}));
}

TEST_CASE("HKR on the plane in small characteristic") {
    const int W = 4;
    for (std::uint32_t p : {2u, 3u}) {
        CAPTURE(p);
        auto t = hochschild_homology(truncated_polynomials(Ring::prime_field(p), 2, W), 3);
        for (int w = 0; w <= W; ++w) {
            CAPTURE(w);
            for (int i = 0; i <= 2; ++i) CHECK(t.dim("HH", i, w) == form_basis(2, i, w).size());
            CHECK(t.dim("HH", 3, w) == 0);
        }
    }
}

TEST_CASE("matrix algebras are Morita invariant") {
    CHECK(hochschild_homology(matrix_algebra(ground_ring(Ring::rationals()), 2), 3).dims("HH", 0, 3) == Dims{1, 0, 0, 0});
    CHECK(hochschild_cohomology(matrix_algebra(ground_ring(Ring::prime_field(5)), 2), 3).dims("HH^", 0, 3) ==
          Dims{1, 0, 0, 0});
    Algebra md = matrix_algebra(dual_numbers(Ring::rationals()), 2);
    CHECK(hochschild_homology(md, 3).dims("HH", 0, 3) == Dims{2, 1, 1, 1});
}

TEST_CASE("semisimple group algebra") {
    Algebra g = group_algebra(GroupTable::cyclic(3), Ring::prime_field(2));
    CHECK(hochschild_homology(g, 3).dims("HH", 0, 3) == Dims{3, 0, 0, 0});
    auto hp = periodic_cyclic(g, 8);
    CHECK(hp.table.dims("HP", 0, 1) == Dims{3, 0});
    for (int s = 0; s < 3; ++s) CHECK(hochschild_homology(g, 2).dim("HH", 0, -1, s) == 1);
}

TEST_CASE("modular group algebra splits by sector") {
    // F2[C2] = F2[x]/x^2 with HH_n of dimension 2 in every degree
    Algebra g = group_algebra(GroupTable::cyclic(2), Ring::prime_field(2));
    auto t = hochschild_homology(g, 4);
    CHECK(t.dims("HH", 0, 4) == Dims{2, 2, 2, 2, 2});
    CHECK(t.dims("HH", 0, 4, -1, 0) == Dims{1, 1, 1, 1, 1});
}

TEST_CASE("DG smoke algebra is quasi-isomorphic to the ground field") {
    Algebra d = dg_smoke_algebra(Ring::rationals());
    CHECK(hochschild_homology(d, 4).dims("HH", 0, 4) == Dims{1, 0, 0, 0, 0});
    auto c = cyclic_homology(d, 4);
    CHECK(c.table.dims("HC", 0, 4) == Dims{1, 0, 1, 0, 1});
    CHECK(c.connes.exact());
    CHECK(cyclic_homology(d, 4, {{}, Route::Bicomplex}).table.dims("HC", 0, 4) == Dims{1, 0, 1, 0, 1});
}

TEST_CASE("integral and p-adic coefficients") {
    Algebra z = dual_numbers(Ring::integers());
    auto t = hochschild_homology(z, 4);
    // HH_{2k-1}(Z[e]/e^2) = Z + Z/2, HH_{2k} = Z for k >= 1
    CHECK(t.groups.at({"HH", 0, -1, -1}).rank == 2);
    CHECK(t.groups.at({"HH", 1, -1, -1}).rank == 1);
    CHECK(t.groups.at({"HH", 1, -1, -1}).torsion == std::vector<Integer>{2});
    CHECK(t.groups.at({"HH", 2, -1, -1}).rank == 1);
    CHECK(t.groups.at({"HH", 2, -1, -1}).torsion.empty());

    Algebra z4 = dual_numbers(Ring::cyclic(2, 2));
    auto m = hochschild_homology(z4, 2);
    CHECK(m.groups.at({"HH", 1, -1, -1}).rank == 1);
    CHECK(m.groups.at({"HH", 1, -1, -1}).torsion == std::vector<Integer>{2});
}

TEST_CASE("negative cyclic homology of the ground field") {
    auto r = negative_cyclic(ground_ring(Ring::rationals()), 2, 3);
    CHECK(r.sequence_ok);
    for (int n = r.lo; n <= 2; ++n) {
        CAPTURE(n);
        const bool reliable = !r.table.unreliable.count({"HC-", n, -1, -1});
        if (n > r.lo + 1) CHECK(reliable);
        if (reliable) CHECK(r.table.dim("HC-", n) == (n <= 0 && n % 2 == 0 ? 1u : 0u));
    }
    auto b = negative_cyclic(ground_ring(Ring::rationals()), 2, 4, {{}, Route::Bicomplex});
    CHECK(b.sequence_ok);
    CHECK(b.table.dim("HC-", 0) == 1);
    CHECK(b.table.dim("HC-", -2) == 1);
}
