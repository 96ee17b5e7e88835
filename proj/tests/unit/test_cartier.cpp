#include <doctest.h>

#include "cyclotome/algebra/constructions.hpp"
#include "cyclotome/cartier/cartier.hpp"
#include "cyclotome/cartier/tate.hpp"

using namespace cyclotome;

TEST_CASE("Tate cohomology of small cyclic modules") {
    auto t = tate_cyclic(trivial_module(Ring::prime_field(2), 2, 1), -2, 3);
    for (const auto& [i, g] : t.groups) CHECK(g.rank == 1);
    CHECK(t.periodic);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto f = tate_cyclic(regular_module(Ring::prime_field(p), static_cast<int>(p)), 0, 3);
        for (const auto& [i, g] : f.groups) CHECK(g.is_zero());
    }
    auto q = tate_cyclic(trivial_module(Ring::rationals(), 2, 1), 0, 3);
    for (const auto& [i, g] : q.groups) CHECK(g.is_zero());
    // Z with trivial Z/3: H^even = Z/3, H^odd = 0
    auto z = tate_cyclic(trivial_module(Ring::integers(), 3, 1), 0, 3);
    CHECK(z.groups[0].torsion == std::vector<Integer>{3});
    CHECK(z.groups[1].is_zero());
    CHECK(z.periodic);
}

TEST_CASE("sigma of the wrong order is rejected") {
    CyclicModule v = regular_module(Ring::prime_field(3), 3);
    v.n = 2;
    CHECK_THROWS_AS(tate_cyclic(v, 0, 1), Error);
}

TEST_CASE("Tate cohomology of V and its p-th tensor power") {
    for (std::uint32_t p : {2u, 3u})
        for (std::size_t dim : {1u, 2u}) {
            CAPTURE(p);
            CAPTURE(dim);
            auto r = tt_le_check(p, dim);
            CHECK(r.ok());
            for (const auto& d : r.degrees) CHECK(d.target == dim);
        }
}

TEST_CASE("diagonal quasi-Frobenius maps") {
    auto trivial = diagonal_quasi_frobenius(GroupTable::trivial(), 2);
    CHECK(trivial.target.dim() == 1);
    CHECK(quasi_frobenius_validate(trivial).ok());
    auto c2 = diagonal_quasi_frobenius(GroupTable::cyclic(2), 3);
    CHECK(c2.target.dim() == 8);
    CHECK(quasi_frobenius_validate(c2).ok());
    auto c3 = diagonal_quasi_frobenius(GroupTable::cyclic(3), 2);
    CHECK(quasi_frobenius_validate(c3).ok());

    // the zero map is not unital
    auto zero = quasi_frobenius_from(c3.source, 2, SparseMatrix(c3.target.dim(), c3.source.dim()));
    auto z = quasi_frobenius_validate(zero);
    CHECK_FALSE(z.algebra_map);
    CHECK_FALSE(z.ok());

    // rotating the image keeps equivariance
    auto rotated = quasi_frobenius_from(c3.source, 2, c3.phi);
    for (std::size_t i = 0; i < rotated.phi.cols(); ++i)
        rotated.phi.col(i) = apply(rotated.target.ring, rotated.target.action->matrices[1], rotated.phi.col(i));
    auto rr = quasi_frobenius_validate(rotated);
    CHECK(rr.equivariant);
    CHECK(rr.ok());
}

TEST_CASE("twisted sectors of smash products") {
    auto f5 = twisted_sectors(with_trivial_action(ground_ring(Ring::prime_field(5)), GroupTable::cyclic(2)), 3);
    CHECK(f5.classes == 2);
    CHECK(f5.partition);
    CHECK(f5.stable);
    CHECK(f5.sums_match);
    for (int s = 0; s < 2; ++s) CHECK(f5.hh.dim("HH", 0, -1, s) == 1);

    auto s3 = twisted_sectors(with_trivial_action(ground_ring(Ring::rationals()), GroupTable::symmetric(3)), 2);
    CHECK(s3.classes == 3);
    CHECK(s3.stable);
    CHECK(s3.sums_match);
    CHECK(s3.hh.dim("HH", 0) == 3);

    auto act = twisted_sectors(group_algebra(GroupTable::cyclic(3), Ring::prime_field(2)), 2);
    CHECK(act.partition);
    CHECK(act.stable);
    CHECK(act.sums_match);
}

TEST_CASE("sector comparisons report honestly") {
    for (const auto& c : sector_iso_checks(ground_ring(Ring::prime_field(2)), 6)) {
        CAPTURE(c.name);
        CHECK(c.verdict != Verdict::Disagree);
        if (c.lhs_reliable && c.rhs_reliable) CHECK(c.lhs[0] == c.rhs[0]);
    }
    // the inverse-limit sigma sector of F_2[Z/2] collapses; that must be flagged
    const auto checks = sector_iso_checks(ground_ring(Ring::prime_field(2)), 6);
    CHECK(checks[0].verdict == Verdict::Inconclusive);
    CHECK_FALSE(checks[0].note.empty());
}

TEST_CASE("Cartier dimension check") {
    auto a = cartier_dim_check(group_algebra(GroupTable::cyclic(3), Ring::prime_field(2)), 6);
    CHECK(a.applicable());
    CHECK(a.hh == std::vector<std::size_t>{3, 0, 0, 0, 0, 0, 0});
    CHECK(a.hp == std::array<std::size_t, 2>{3, 0});
    CHECK(a.passes());
    auto b = cartier_dim_check(group_algebra(GroupTable::cyclic(2), Ring::prime_field(3)), 6);
    CHECK(b.passes());
    CHECK(b.hp == std::array<std::size_t, 2>{2, 0});
    auto m = cartier_dim_check(group_algebra(GroupTable::cyclic(2), Ring::prime_field(2)), 4);
    CHECK_FALSE(m.applicable());
    CHECK_FALSE(m.passes());
}

TEST_CASE("explicit Cartier map") {
    auto id = cartier_map_explicit(diagonal_quasi_frobenius(GroupTable::trivial(), 2), 6);
    CHECK(id.bijective());
    auto c2 = cartier_map_explicit(diagonal_quasi_frobenius(GroupTable::cyclic(2), 3), 6);
    CHECK(c2.bijective());
    auto c3 = cartier_map_explicit(diagonal_quasi_frobenius(GroupTable::cyclic(3), 2), 6);
    CHECK(c3.bijective());
    auto mod = cartier_map_explicit(diagonal_quasi_frobenius(GroupTable::cyclic(2), 2), 4);
    CHECK_FALSE(mod.bijective());
    CHECK(mod.rank == 1);
}
