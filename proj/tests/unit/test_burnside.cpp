#include <doctest.h>

#include <random>

#include "cyclotome/burnside/burnside.hpp"

using namespace cyclotome;

namespace {

BurnsideHomElement single(const SpanClass& c, std::int64_t k = 1) {
    BurnsideHomElement e;
    e.add(c, k);
    return e;
}

IntMat permutation_rep(const GSet& x, int row) {
    IntMat m = int_zero(x.size, x.size);
    for (std::size_t i = 0; i < x.size; ++i) m(static_cast<std::size_t>(x.act[row][i]), i) = 1;
    return m;
}

}  // namespace

TEST_CASE("subgroup lattices") {
    auto c2 = subgroup_classes(GroupTable::cyclic(2));
    CHECK(c2.class_count() == 2);
    CHECK(c2.below[0][1]);
    CHECK_FALSE(c2.below[1][0]);
    for (int p : {3, 5, 7}) CHECK(subgroup_classes(GroupTable::cyclic(p)).class_count() == 2);
    auto s3 = subgroup_classes(GroupTable::symmetric(3));
    CHECK(s3.subgroups.size() == 6);
    CHECK(s3.class_count() == 4);
    std::vector<int> orders;
    for (std::size_t c = 0; c < 4; ++c) orders.push_back(mask_order(s3.rep(c)));
    CHECK(orders == std::vector<int>{1, 2, 3, 6});
    CHECK_FALSE(s3.below[1][2]);
    CHECK_FALSE(s3.below[2][1]);
    auto s4 = subgroup_classes(GroupTable::symmetric(4));
    CHECK(s4.subgroups.size() == 30);
    CHECK(s4.class_count() == 11);
    CHECK(subgroup_classes(GroupTable::cyclic(12)).class_count() == 6);
    CHECK_THROWS_AS(subgroup_classes(GroupTable::symmetric(4), 12), Error);
}

TEST_CASE("subconjugacy is a partial order on classes") {
    for (const auto& g : {GroupTable::symmetric(3), GroupTable::dihedral(4), GroupTable::symmetric(4)}) {
        auto l = subgroup_classes(g);
        const std::size_t n = l.class_count();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(l.below[i][i]);
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) CHECK_FALSE((l.below[i][j] && l.below[j][i]));
                for (std::size_t k = 0; k < n; ++k)
                    if (l.below[i][j] && l.below[j][k]) CHECK(l.below[i][k]);
            }
        }
    }
}

TEST_CASE("tables of marks") {
    auto c2 = subgroup_classes(GroupTable::cyclic(2));
    CHECK(table_of_marks(c2) == std::vector<std::vector<std::int64_t>>{{2, 0}, {1, 1}});
    CHECK(table_of_marks(subgroup_classes(GroupTable::trivial())) == std::vector<std::vector<std::int64_t>>{{1}});
    auto s3 = subgroup_classes(GroupTable::symmetric(3));
    CHECK(table_of_marks(s3) ==
          std::vector<std::vector<std::int64_t>>{{6, 0, 0, 0}, {3, 1, 0, 0}, {2, 0, 2, 0}, {1, 1, 1, 1}});
    for (const auto& g : {GroupTable::dihedral(4), GroupTable::symmetric(4), GroupTable::cyclic(6)}) {
        auto l = subgroup_classes(g);
        auto t = table_of_marks(l);
        for (std::size_t k = 0; k < t.size(); ++k) {
            CHECK(t[k][k] > 0);
            for (std::size_t h = 0; h < t.size(); ++h)
                if (t[k][h] != 0) CHECK(l.below[h][k]);
            for (std::size_t h = k + 1; h < t.size(); ++h) CHECK(t[k][h] == 0);
        }
    }
}

TEST_CASE("Hom ranks in the Burnside category") {
    auto c2 = subgroup_classes(GroupTable::cyclic(2));
    CHECK(burnside_hom_basis(c2, 0, 0).size() == 2);
    CHECK(burnside_hom_basis(c2, 1, 1).size() == 2);
    CHECK(burnside_hom_basis(c2, 0, 1).size() == 1);
    CHECK(burnside_hom_basis(subgroup_classes(GroupTable::trivial()), 0, 0).size() == 1);
    for (const auto& g : {GroupTable::symmetric(3), GroupTable::dihedral(4)}) {
        auto l = subgroup_classes(g);
        const std::size_t top = l.class_count() - 1;
        CHECK(burnside_hom_basis(l, top, top).size() == l.class_count());
        for (std::size_t a = 0; a < l.class_count(); ++a)
            for (std::size_t b = 0; b < l.class_count(); ++b)
                CHECK(burnside_hom_basis(l, a, b).size() == burnside_hom_basis(l, b, a).size());
    }
}

TEST_CASE("span composition") {
    const GroupTable g = GroupTable::cyclic(2);
    auto l = subgroup_classes(g);
    const GSet pt = point_set(g);
    const GSet free = orbit(g, l.rep(0)).set;
    Span s{pt, pt, free, {0, 0}, {0, 0}};
    auto sq = classify(g, span_compose(g, s, s));
    CHECK(sq == single(classify(g, s).terms.begin()->first, 2));
    CHECK(classify(g, span_compose(g, identity_span(pt), s)) == classify(g, s));
    CHECK(classify(g, span_compose(g, s, identity_span(pt))) == classify(g, s));
    CHECK_THROWS_AS(span_compose(g, s, identity_span(free)), Error);
    Span broken{pt, free, free, {0, 0}, {0, 0}};
    CHECK_THROWS_AS(check_span(g, broken), Error);
}

TEST_CASE("composition is associative and bilinear") {
    const GroupTable g = GroupTable::symmetric(3);
    auto l = subgroup_classes(g);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> cls(0, l.class_count() - 1);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t a = cls(rng), b = cls(rng), c = cls(rng), d = cls(rng);
        const GSet X = orbit(g, l.rep(a)).set, Y = orbit(g, l.rep(b)).set, Z = orbit(g, l.rep(c)).set,
                   W = orbit(g, l.rep(d)).set;
        auto pick = [&](const GSet& s, const GSet& t) {
            auto basis = hom_basis(g, s, t);
            BurnsideHomElement e;
            for (const auto& x : basis) e.add(x, static_cast<std::int64_t>(rng() % 3) - 1);
            return e;
        };
        const auto f = pick(X, Y), h = pick(Y, Z), k = pick(Z, W), f2 = pick(X, Y);
        CHECK(compose(g, X, Z, W, compose(g, X, Y, Z, f, h), k) == compose(g, X, Y, W, f, compose(g, Y, Z, W, h, k)));
        auto sum = f;
        sum += f2;
        auto rhs = compose(g, X, Y, Z, f, h);
        rhs += compose(g, X, Y, Z, f2, h);
        CHECK(compose(g, X, Y, Z, sum, h) == rhs);
    }
}

TEST_CASE("marks are multiplicative on the Burnside ring") {
    for (const auto& g : {GroupTable::cyclic(2), GroupTable::symmetric(3), GroupTable::cyclic(6)}) {
        auto l = subgroup_classes(g);
        const GSet pt = point_set(g);
        const auto basis = hom_basis(g, pt, pt);
        CHECK(basis.size() == l.class_count());
        for (const auto& x : basis)
            for (const auto& y : basis) {
                const Span sx = realize(g, pt, pt, x), sy = realize(g, pt, pt, y);
                const auto mx = marks(l, sx.middle), my = marks(l, sy.middle);
                const auto mc = marks(l, span_compose(g, sx, sy).middle);
                for (std::size_t h = 0; h < mc.size(); ++h) CHECK(mc[h] == mx[h] * my[h]);
            }
    }
}

TEST_CASE("Mackey functors pass validation") {
    auto c2 = subgroup_classes(GroupTable::cyclic(2));
    auto burnside = burnside_ring_mackey(c2);
    CHECK(burnside.rank == std::vector<std::size_t>{1, 2});
    auto r = mackey_validate(c2, burnside);
    CHECK(r.ok());
    CHECK(r.relations_checked > 10);

    auto s3 = subgroup_classes(GroupTable::symmetric(3));
    auto bs3 = burnside_ring_mackey(s3);
    CHECK(bs3.rank == std::vector<std::size_t>{1, 2, 2, 4});
    CHECK(mackey_validate(s3, bs3).ok());

    // Z/2 swapping two coordinates, over Z and over F_2
    const GSet two = orbit(c2.group, c2.rep(0)).set;
    std::vector<IntMat> swap{permutation_rep(two, 0), permutation_rep(two, 1)};
    for (const Ring& ring : {Ring::integers(), Ring::prime_field(2)}) {
        auto fp = fixed_point_mackey(c2, ring, swap);
        CHECK(fp.rank == std::vector<std::size_t>{2, 1});
        CHECK(mackey_validate(c2, fp).ok());
    }
    // sign representation over F_3
    std::vector<IntMat> sign{int_identity(1), int_identity(1)};
    sign[1](0, 0) = 2;
    CHECK(mackey_validate(c2, fixed_point_mackey(c2, Ring::prime_field(3), sign)).ok());

    const GSet three = orbit(s3.group, s3.rep(1)).set;
    std::vector<IntMat> perm;
    for (int x = 0; x < s3.group.size(); ++x) perm.push_back(permutation_rep(three, x));
    auto fs3 = fixed_point_mackey(s3, Ring::integers(), perm);
    CHECK(mackey_validate(s3, fs3).ok());
}

TEST_CASE("a corrupted transfer is caught") {
    auto c2 = subgroup_classes(GroupTable::cyclic(2));
    const GSet two = orbit(c2.group, c2.rep(0)).set;
    std::vector<IntMat> swap{permutation_rep(two, 0), permutation_rep(two, 1)};
    auto fp = fixed_point_mackey(c2, Ring::integers(), swap);
    const auto maps = orbit_maps(c2);
    std::size_t target = maps.size();
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps[i].from == 0 && maps[i].to == 1) target = i;
    REQUIRE(target < maps.size());
    fp.transfer[target](0, 0) += 1;
    auto r = mackey_validate(c2, fp);
    CHECK_FALSE(r.ok());
    bool names_transfer = false;
    for (const auto& v : r.violations) names_transfer = names_transfer || v.find("tr(G/e -> G/G") != std::string::npos;
    CHECK(names_transfer);

    auto missing = fp;
    missing.transfer.pop_back();
    CHECK_THROWS_AS(mackey_validate(c2, missing), Error);
}
