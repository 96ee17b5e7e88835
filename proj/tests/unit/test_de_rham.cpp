#include <doctest.h>

#include "cyclotome/fdm/de_rham.hpp"

using namespace cyclotome;

TEST_CASE("form bases count monomial forms") {
    CHECK(form_basis(1, 0, 3).size() == 1);
    CHECK(form_basis(1, 1, 3).size() == 1);
    CHECK(form_basis(1, 1, 0).empty());
    CHECK(form_basis(2, 1, 3).size() == 6);  // x^a y^b dx or dy with a + b = 2
    CHECK(form_basis(2, 2, 3).size() == 2);
}

TEST_CASE("Frobenius pull-back on the affine line") {
    DeRhamData d{3, 2, 1, 6, {}};
    auto r = de_rham_fdm(d);
    CHECK(r.divisible);
    // x^a dx -> p x^{ap+p-1} dx, so phi_1(x dx) = x^5 dx: one entry equal to 1
    const IntMat& phi = r.phi.at({1, 2});
    REQUIRE(phi.cols() == 1);
    REQUIRE(phi.rows() == 1);
    CHECK(phi(0, 0) == 1);
    CHECK(r.min_valuation.at(1) == 1);
    // H^0 over Z/9 in degree 3: x^3 is closed mod 9? d(x^3) = 3x^2 dx, so H^0_3 = Z/3
    CHECK(r.cohomology.at({0, 3}).torsion == std::vector<Integer>{3});
    CHECK(r.cohomology.at({0, 0}).rank == 1);
}

TEST_CASE("Frobenius pull-back on the plane is divisible by p^2 on 2-forms") {
    for (std::uint32_t p : {2u, 3u}) {
        DeRhamData d{p, 3, 2, 4, {}};
        auto r = de_rham_fdm(d);
        CHECK(r.divisible);
        if (r.min_valuation.count(2)) CHECK(r.min_valuation.at(2) >= 2);
    }
    // a non-diagonal lift x -> x^2 + 2y^2, y -> y^2 + 2xy
    DeRhamData d{2, 3, 2, 4, {{{{2, 0}, 1}, {{0, 2}, 2}}, {{{0, 2}, 1}, {{1, 1}, 2}}}};
    auto r = de_rham_fdm(d);
    CHECK(r.divisible);
}

TEST_CASE("lifts that are not Frobenius are rejected") {
    DeRhamData d{3, 2, 1, 4, {{{{3}, 2}}}};
    CHECK_THROWS_AS(de_rham_fdm(d), Error);
    DeRhamData e{3, 2, 1, 4, {{{{3}, 1}, {{2}, 3}}}};  // not homogeneous
    CHECK_THROWS_AS(de_rham_fdm(e), Error);
}

TEST_CASE("mod-p Cartier on affine space") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        CAPTURE(p);
        auto line = cartier_mod_p_check({p, 2, 1, static_cast<int>(2 * p), {}});
        CHECK(line.ok());
        CHECK(line.entries.size() == 6);  // q in {0, 1}, d in {0, 1, 2}
        auto plane = cartier_mod_p_check({p, 2, 2, static_cast<int>(p + 2), {}});
        CHECK(plane.ok());
    }
    auto small = cartier_mod_p_check({5, 2, 1, 3, {}});
    CHECK(small.inconclusive);
}
