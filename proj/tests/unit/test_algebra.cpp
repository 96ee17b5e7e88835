#include <doctest.h>

#include <random>

#include "cyclotome/algebra/constructions.hpp"
#include "cyclotome/linalg/error.hpp"

using namespace cyclotome;

namespace {

// Independent centralizer count: dim Z(k[G]) equals the number of orbits of G on itself by conjugation.
int conjugation_orbits(const GroupTable& g) {
    std::vector<int> seen(g.size(), 0);
    int orbits = 0;
    for (int a = 0; a < g.size(); ++a) {
        if (seen[a]) continue;
        ++orbits;
        for (int x = 0; x < g.size(); ++x) seen[g.mul(g.mul(x, a), g.inv(x))] = 1;
    }
    return orbits;
}

ErrorKind error_kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("group presets satisfy the group axioms and class counts") {
    CHECK(GroupTable::cyclic(5).size() == 5);
    CHECK(GroupTable::symmetric(3).size() == 6);
    CHECK(GroupTable::symmetric(4).size() == 24);
    CHECK(GroupTable::symmetric(3).conjugacy_classes().size() == 3);
    CHECK(GroupTable::symmetric(4).conjugacy_classes().size() == 5);
    CHECK(GroupTable::dihedral(4).conjugacy_classes().size() == 5);
    CHECK_FALSE(GroupTable::symmetric(3).abelian());
    CHECK(group_preset("C4").order(1) == 4);
    CHECK_THROWS_AS(GroupTable({"a", "b"}, {{0, 0}, {0, 1}}), Error);
}

TEST_CASE("ground ring and dual numbers") {
    Algebra q = ground_ring(Ring::rationals());
    CHECK(q.dim() == 1);
    CHECK(is_commutative(q));

    AlgebraSpec s;
    s.name = "dual";
    s.ring = Ring::rationals();
    s.basis = {"1", "e"};
    s.unit = {{"1", 1}};
    s.mult = {{"1", "1", "1", 1}, {"1", "e", "e", 1}, {"e", "1", "e", 1}};
    Algebra d = build_algebra(s);
    CHECK(d.dim() == 2);
    CHECK(d.product(1, 1).empty());

    AlgebraSpec bad = s;
    bad.mult = {{"1", "1", "1", 1}, {"1", "e", "e", 1}};
    CHECK(error_kind_of([&] { build_algebra(bad); }) == ErrorKind::Validation);

    AlgebraSpec nonassoc = s;
    nonassoc.mult.push_back({"e", "e", "1", 1});
    nonassoc.mult.push_back({"e", "e", "e", 1});
    CHECK_NOTHROW(build_algebra(nonassoc));  // e^2 = 1 + e is associative
}

TEST_CASE("associativity failure names the triple") {
    AlgebraSpec s;
    s.ring = Ring::rationals();
    s.basis = {"1", "a", "b"};
    s.unit = {{"1", 1}};
    s.mult = {{"1", "1", "1", 1}, {"1", "a", "a", 1}, {"a", "1", "a", 1}, {"1", "b", "b", 1},
              {"b", "1", "b", 1}, {"a", "a", "b", 1}, {"a", "b", "1", 1}};
    try {
        build_algebra(s);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
        CHECK(std::string(e.what()).find("associativity fails on (") != std::string::npos);
    }
}

TEST_CASE("group algebras") {
    Algebra c3 = group_algebra(GroupTable::cyclic(3), Ring::prime_field(2));
    CHECK(c3.dim() == 3);
    CHECK(is_commutative(c3));
    CHECK(group_algebra(GroupTable::trivial(), Ring::rationals()).dim() == 1);

    for (auto g : {GroupTable::symmetric(3), GroupTable::dihedral(4), GroupTable::symmetric(4), GroupTable::cyclic(6)}) {
        Algebra a = group_algebra(g, Ring::rationals());
        CHECK(a.dim() == std::size_t(g.size()));
        CHECK(center_dimension(a) == std::size_t(conjugation_orbits(g)));
    }
    CHECK_FALSE(is_commutative(group_algebra(GroupTable::symmetric(3), Ring::rationals())));
}

TEST_CASE("path algebras") {
    CHECK(path_algebra({2, {{0, 1}}, {}}, Ring::rationals()).dim() == 3);
    CHECK(path_algebra({1, {}, {}}, Ring::rationals()).dim() == 1);
    Algebra a3 = path_algebra({3, {{0, 1}, {1, 2}}, {}}, Ring::rationals());
    CHECK(a3.dim() == 6);
    CHECK(a3.max_degree() == 2);
    CHECK(error_kind_of([] { path_algebra({1, {{0, 0}}, {}}, Ring::rationals()); }) == ErrorKind::Input);
    CHECK(error_kind_of([] { path_algebra({2, {{0, 1}, {1, 0}}, {}}, Ring::rationals()); }) == ErrorKind::Input);
}

TEST_CASE("matrix algebras") {
    Algebra m2 = matrix_algebra(ground_ring(Ring::rationals()), 2);
    CHECK(m2.dim() == 4);
    CHECK(m2.unit.size() == 2);
    CHECK(center_dimension(m2) == 1);
    Algebra g = group_algebra(GroupTable::cyclic(2), Ring::prime_field(3));
    CHECK(matrix_algebra(g, 1).dim() == g.dim());
    CHECK(matrix_algebra(g, 2).dim() == 8);
    CHECK(matrix_algebra(path_algebra({2, {{0, 1}}, {}}, Ring::rationals()), 2).dim() == 12);
}

TEST_CASE("cyclic tensor powers") {
    Algebra f2 = cyclic_tensor_power(ground_ring(Ring::prime_field(2)), 2, 1000);
    CHECK(f2.dim() == 1);
    Algebra t = cyclic_tensor_power(group_algebra(GroupTable::cyclic(2), Ring::prime_field(3)), 3, 1000);
    CHECK(t.dim() == 8);
    REQUIRE(t.action.has_value());
    const auto& sigma = t.action->matrices[1];
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        AlgVec v = t.basis_vector(rng() % t.dim());
        AlgVec w = v;
        int order = 0;
        do {
            w = apply(t.ring, sigma, w);
            ++order;
        } while (!(w.size() == v.size() && w[0].index == v[0].index && w[0].value == v[0].value) && order < 10);
        CHECK(3 % order == 0);
    }
    CHECK(error_kind_of([] { cyclic_tensor_power(truncated_polynomials(Ring::rationals(), 2, 6), 5, 1000); }) ==
          ErrorKind::Resource);
}

TEST_CASE("DG tensor power carries Koszul signs") {
    Algebra d = dg_smoke_algebra(Ring::rationals());
    Algebra t = cyclic_tensor_power(d, 2, 100);  // validation covers Leibniz and automorphism checks
    const auto y = d.index_of("y");
    const std::uint32_t yy = y * 3 + y;
    const AlgVec s = apply(t.ring, t.action->matrices[1], t.basis_vector(yy));
    REQUIRE(s.size() == 1);
    CHECK(s[0].value == -1);
}

TEST_CASE("smash products") {
    Algebra triv = with_trivial_action(ground_ring(Ring::prime_field(3)), GroupTable::cyclic(3));
    Algebra s = smash_product(triv);
    Algebra g = group_algebra(GroupTable::cyclic(3), Ring::prime_field(3));
    CHECK(s.dim() == 3);
    CHECK(s.products == g.products);
    CHECK(s.basis == g.basis);

    Algebra b = with_trivial_action(group_algebra(GroupTable::cyclic(2), Ring::prime_field(5)), GroupTable::cyclic(5));
    CHECK(smash_product(b).dim() == 10);

    // sigma-twisted tensor square of F3[C2]
    Algebra t = smash_product(cyclic_tensor_power(group_algebra(GroupTable::cyclic(2), Ring::prime_field(3)), 3, 100));
    CHECK(t.dim() == 24);

    Algebra nonauto = ground_ring(Ring::rationals());
    nonauto.action = GroupAction{GroupTable::cyclic(2), {sparse_identity(1), SparseMatrix(1, 1)}};
    nonauto.action->matrices[1].col(0) = {{0, Scalar(2)}};
    CHECK(error_kind_of([&] { validate_algebra(nonauto); }) == ErrorKind::Validation);
}

TEST_CASE("rebasing the unit and changing rings") {
    Algebra qq = direct_product(ground_ring(Ring::rationals()), ground_ring(Ring::rationals()));
    CHECK(qq.idempotents.size() == 2);
    qq.idempotents.clear();
    Algebra r = rebase_unit(qq);
    REQUIRE(r.unit_index().has_value());
    CHECK(is_commutative(r));
    CHECK(r.dim() == 2);

    Algebra z = group_algebra(GroupTable::cyclic(2), Ring::integers());
    Algebra z9 = change_ring(z, Ring::cyclic(3, 2));
    CHECK(z9.dim() == 2);
}

TEST_CASE("truncated polynomials") {
    Algebra p = truncated_polynomials(Ring::prime_field(5), 2, 3);
    CHECK(p.dim() == 10);
    CHECK(p.basis[1] == "x");
    CHECK(p.basis[4] == "xy");
    CHECK(is_commutative(p));
}
