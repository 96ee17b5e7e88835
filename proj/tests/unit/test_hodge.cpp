#include <doctest.h>

#include "cyclotome/algebra/constructions.hpp"
#include "cyclotome/hodge/spectral.hpp"

using namespace cyclotome;

namespace {

Algebra dual_numbers() {
    AlgebraSpec s;
    s.name = "dual";
    s.ring = Ring::rationals();
    s.basis = {"1", "e"};
    s.unit = {{"1", 1}};
    s.mult = {{"1", "1", "1", 1}, {"1", "e", "e", 1}, {"e", "1", "e", 1}};
    return build_algebra(s);
}

}  // namespace

TEST_CASE("filtration checks on small algebras") {
    for (const Algebra& a : {ground_ring(Ring::rationals()), group_algebra(GroupTable::cyclic(2), Ring::prime_field(3)),
                             dual_numbers()}) {
        CAPTURE(a.name);
        CHECK(hodge_filtration(a, 4, 3).ok());
    }
}

TEST_CASE("ground field degenerates at E1") {
    auto r = degeneration_check(ground_ring(Ring::rationals()), 6, 4);
    CHECK(r.degenerate);
    CHECK(r.pages.transitions_ok);
    CHECK(r.pages.e1_matches_hh);
    CHECK(r.abutment_checked);
    CHECK(r.abutment_ok);
    CHECK(r.hp == std::array<std::size_t, 2>{1, 0});
}

TEST_CASE("smooth and proper instances degenerate") {
    for (const Algebra& a : {path_algebra({2, {{0, 1}}, {}}, Ring::rationals()), matrix_algebra(ground_ring(Ring::rationals()), 2),
                             direct_product(ground_ring(Ring::rationals()), ground_ring(Ring::rationals()))}) {
        CAPTURE(a.name);
        auto r = degeneration_check(a, 6, 4);
        CHECK(r.degenerate);
        CHECK(r.pages.transitions_ok);
        CHECK(r.pages.e1_matches_hh);
    }
    auto a2 = degeneration_check(path_algebra({2, {{0, 1}}, {}}, Ring::rationals()), 6, 4);
    CHECK(a2.hp == std::array<std::size_t, 2>{2, 0});
    CHECK(a2.abutment_ok);
}

TEST_CASE("dual numbers do not degenerate") {
    auto r = degeneration_check(dual_numbers(), 6, 4);
    CHECK_FALSE(r.degenerate);
    REQUIRE(r.first_nonzero.has_value());
    CHECK(r.first_nonzero->r == 1);
    CHECK(r.pages.transitions_ok);
    CHECK(r.pages.e1_matches_hh);
}

TEST_CASE("E1 matches Hochschild homology of a group algebra") {
    auto p = spectral_pages(group_algebra(GroupTable::cyclic(3), Ring::prime_field(2)), 2, 1);
    CHECK(p.e1_matches_hh);
    CHECK(p.dim(1, 0, 0) == 3);
    CHECK(p.dim(1, 0, 1) == 0);
}
