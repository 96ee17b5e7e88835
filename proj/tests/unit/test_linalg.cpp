#include <random>

#include "cyclotome/linalg/complex.hpp"
#include "cyclotome/linalg/dense.hpp"
#include "cyclotome/linalg/kernels.hpp"
#include "cyclotome/linalg/module.hpp"
#include "cyclotome/linalg/smith.hpp"
#include "doctest.h"

using namespace cyclotome;

namespace {

SparseMatrix mat(const Ring& r, std::vector<std::vector<long>> rows) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (rows[i][j] != 0) t.push_back({i, j, Scalar(rows[i][j])});
    return sparse_from_triplets(rows.size(), rows.empty() ? 0 : rows[0].size(), t, r);
}

template <class F>
SparseMat<typename F::value_type> random_sparse(const F& f, std::mt19937& rng, std::size_t rows, std::size_t cols,
                                                double density) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<long> val(-3, 3);
    SparseMat<typename F::value_type> m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i)
            if (u(rng) < density) {
                auto v = f.from_int(val(rng));
                if (!F::is_zero(v)) m.col(j).push_back({static_cast<std::uint32_t>(i), v});
            }
    return m;
}

}  // namespace

TEST_CASE("rank_kernel_image examples") {
    auto f5 = Ring::prime_field(5);
    auto r = rank_kernel_image(mat(f5, {{1, 0}, {0, 1}}), f5);
    CHECK(r.rank == 2);
    CHECK(r.kernel.empty());

    auto q = Ring::rationals();
    auto z = rank_kernel_image(SparseMatrix(3, 4), q);
    CHECK(z.rank == 0);
    CHECK(z.kernel.size() == 4);

    auto f7 = Ring::prime_field(7);
    auto s = rank_kernel_image(mat(f7, {{1, 2}, {2, 4}}), f7);
    CHECK(s.rank == 1);
    REQUIRE(s.kernel.size() == 1);
    // kernel of [1 2] over F7 is spanned by (-2, 1) = (5, 1), echelonized to (1, 3)
    CHECK(s.kernel[0][0] == 1);
    CHECK(s.kernel[0][1] == 3);

    CHECK_THROWS_AS(rank_kernel_image(SparseMatrix(1, 1), Ring::integers()), Error);
}

TEST_CASE("rank plus nullity equals column count") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto ring = trial % 2 ? Ring::prime_field(3) : Ring::rationals();
        std::uniform_int_distribution<int> d(1, 9);
        std::size_t rows = d(rng), cols = d(rng);
        SparseMatrix m = visit_field(ring, [&](auto f) { return to_scalar_matrix(f, random_sparse(f, rng, rows, cols, 0.4)); });
        auto r = rank_kernel_image(m, ring);
        CHECK(r.rank + r.kernel.size() == cols);
    }
}

TEST_CASE("serial and parallel elimination agree") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Fp f{2 + 0u};
        if (trial % 3 == 1) f.p = 5;
        if (trial % 3 == 2) f.p = 65521;
        auto m = random_sparse(f, rng, 300, 700, 0.01);
        CHECK(rank_serial(f, m) == rank_parallel(f, m));
        CHECK(rank_serial(f, m) == dense_rank(f, densify(f, m)));
    }
    Qf q;
    auto m = random_sparse(q, rng, 40, 90, 0.05);
    CHECK(rank_serial(q, m) == rank_parallel(q, m));
    CHECK(rank_serial(q, m) == dense_rank(q, densify(q, m)));
}

TEST_CASE("modular rank over Q matches exact elimination") {
    std::mt19937 rng(13);
    Qf q;
    for (int trial = 0; trial < 12; ++trial) {
        // products of thin factors give rank-deficient matrices with fractional dependencies
        const std::size_t inner = 3 + trial % 5;
        auto m = multiply(q, random_sparse(q, rng, 30, inner, 0.5), random_sparse(q, rng, inner, 40, 0.5));
        for (auto& e : m.col(0)) e.value /= 7;
        const auto exact = dense_rank(q, densify(q, m));
        const auto modular = rank_rational_modular(m);
        REQUIRE(modular.has_value());
        CHECK(*modular == exact);
        CHECK(rank_of(q, m) == exact);
    }
}

TEST_CASE("modular rank declines what it cannot certify") {
    Qf q;
    SparseMat<mpq_class> big_ratio(1, 2);
    mpz_class three;
    mpz_ui_pow_ui(three.get_mpz_t(), 3, 25);
    big_ratio.col(0).push_back({0, mpq_class(three)});
    big_ratio.col(1).push_back({0, 1});
    CHECK_FALSE(rank_rational_modular(big_ratio).has_value());
    CHECK(rank_of(q, big_ratio) == 1);

    SparseMat<mpq_class> multiple_of_p(2, 1);
    multiple_of_p.col(0).push_back({1, mpq_class(mpz_class("2305843009213693951"))});
    CHECK_FALSE(rank_rational_modular(multiple_of_p).has_value());
    CHECK(rank_of(q, multiple_of_p) == 1);
}

TEST_CASE("Smith normal form examples") {
    auto z = Ring::integers();
    auto a = smith_normal_form(mat(z, {{3, 0}, {0, 6}}), z);
    CHECK(a.diagonal == std::vector<Scalar>{3, 6});

    auto m = mat(z, {{2, 4}, {6, 8}});
    auto b = smith_normal_form(m, z);
    CHECK(b.diagonal == std::vector<Scalar>{2, 4});
    CHECK(sparse_triplets(ring_multiply(z, ring_multiply(z, b.u, m), b.v)).size() == 2);
    auto prod = ring_multiply(z, ring_multiply(z, b.u, m), b.v);
    CHECK(sparse_at(prod, 0, 0) == 2);
    CHECK(sparse_at(prod, 1, 1) == 4);

    auto r9 = Ring::cyclic(3, 2);
    auto c = smith_normal_form(mat(r9, {{3}}), r9);
    CHECK(c.diagonal == std::vector<Scalar>{3});

    CHECK_THROWS_AS(smith_normal_form(m, Ring::rationals()), Error);
}

TEST_CASE("Smith normal form: U M V = D with unimodular U, V") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> val(-6, 6);
    for (int trial = 0; trial < 25; ++trial) {
        auto ring = trial % 2 ? Ring::integers() : Ring::cyclic(2, 3);
        std::vector<std::vector<long>> rows(1 + trial % 4, std::vector<long>(1 + trial % 5));
        for (auto& r : rows)
            for (auto& x : r) x = val(rng);
        auto m = mat(ring, rows);
        auto s = smith_normal_form(m, ring);
        auto prod = ring_multiply(ring, ring_multiply(ring, s.u, m), s.v);
        auto d = s.d;
        CHECK(sparse_triplets(prod).size() == sparse_triplets(d).size());
        for (const auto& t : sparse_triplets(prod)) {
            CHECK(t.row == t.col);
            CHECK(ring.normalize(t.value) == ring.normalize(sparse_at(d, t.row, t.col)));
        }
        for (std::size_t i = 1; i < s.diagonal.size(); ++i) {
            Integer prev = s.diagonal[i - 1].get_num(), cur = s.diagonal[i].get_num();
            CHECK(cur % prev == 0);
        }
        // unimodularity: U and V are invertible (rank over Q equals size and det is a unit)
        IntMat u = to_int_matrix(s.u), v = to_int_matrix(s.v);
        auto du = smith_integers(u, false), dv = smith_integers(v, false);
        CHECK(du.rank == u.rows());
        CHECK(dv.rank == v.rows());
        Integer det_u = 1, det_v = 1;
        for (const auto& x : du.diagonal) det_u *= x;
        for (const auto& x : dv.diagonal) det_v *= x;
        CHECK(ring.is_unit(Scalar(det_u)));
        CHECK(ring.is_unit(Scalar(det_v)));
    }
}

TEST_CASE("homology_of_complex examples") {
    auto z = Ring::integers();
    ChainComplex c{z, 0, {1, 1}, {mat(z, {{2}})}, true, true, {}};
    auto h = homology_of_complex(c);
    REQUIRE(h.size() == 2);
    CHECK(h[0].module.rank == 0);
    CHECK(h[0].module.torsion == std::vector<Integer>{2});
    CHECK(h[1].module.is_zero());

    auto q = Ring::rationals();
    ChainComplex id{q, 0, {1, 1}, {mat(q, {{1}})}, true, true, {}};
    for (const auto& g : homology_of_complex(id)) CHECK(g.module.is_zero());

    // Koszul complex of x on F_p[x], internal degree <= 4: C_1 = x^i e (deg i+1), C_0 = x^i.
    auto f3 = Ring::prime_field(3);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < 4; ++i) t.push_back({i + 1, i, Scalar(1)});
    ChainComplex k{f3, 0, {5, 4}, {sparse_from_triplets(5, 4, t, f3)}, true, true, {{0, 1, 2, 3, 4}, {1, 2, 3, 4}}};
    auto g = graded_homology(k);
    CHECK(g[0][0] == 1);
    for (int w = 1; w <= 4; ++w) CHECK(g[0][w] == 0);
    for (int w = 1; w <= 4; ++w) CHECK(g[1][w] == 0);
}

TEST_CASE("boundary flags and invariant violations") {
    auto q = Ring::rationals();
    ChainComplex c{q, 0, {1, 1, 1}, {mat(q, {{0}}), mat(q, {{0}})}, true, false, {}};
    auto h = homology_of_complex(c);
    CHECK_FALSE(h[0].boundary_unreliable);
    CHECK(h[2].boundary_unreliable);
    ChainComplex bad{q, 0, {1, 1, 1}, {mat(q, {{1}}), mat(q, {{1}})}, true, true, {}};
    try {
        homology_of_complex(bad);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Invariant);
        CHECK(std::string(e.what()).find("degree 2") != std::string::npos);
    }
}

TEST_CASE("homology is invariant under unimodular change of basis") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> val(-2, 2);
    auto z = Ring::integers();
    // Z^2 -> Z^3 -> Z^2 with d1 d2 = 0 built as d2 = kernel-ish product
    auto d1 = mat(z, {{2, 0, 4}, {0, 0, 0}});
    auto d2 = mat(z, {{2, 0}, {1, 3}, {-1, 0}});
    REQUIRE(ring_is_zero(z, ring_multiply(z, d1, d2)));
    ChainComplex c{z, 0, {2, 3, 2}, {d1, d2}, true, true, {}};
    auto base = homology_of_complex(c);
    for (int trial = 0; trial < 10; ++trial) {
        // random unimodular matrices as products of elementary ones
        auto unimodular = [&](std::size_t n) {
            IntMat u = int_identity(n);
            for (int s = 0; s < 6; ++s) {
                std::size_t i = rng() % n, j = rng() % n;
                if (i == j) continue;
                long cst = val(rng);
                for (std::size_t t = 0; t < n; ++t) u(i, t) += cst * u(j, t);
            }
            return u;
        };
        auto to_sparse = [&](const IntMat& m) {
            std::vector<Triplet> t;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (m(i, j) != 0) t.push_back({i, j, Scalar(m(i, j))});
            return sparse_from_triplets(m.rows(), m.cols(), t, z);
        };
        auto inverse = [&](const IntMat& u) {
            // U^{-1} from SNF: U is unimodular so its SNF transforms give the inverse
            auto s = smith_integers(u, true);
            return int_multiply(s.v, s.u);  // since s.u * u * s.v = I
        };
        IntMat p0 = unimodular(2), p1 = unimodular(3), p2 = unimodular(2);
        // new d1 = p0 d1 p1^{-1}, new d2 = p1 d2 p2^{-1}
        IntMat nd1 = int_multiply(int_multiply(p0, to_int_matrix(d1)), inverse(p1));
        IntMat nd2 = int_multiply(int_multiply(p1, to_int_matrix(d2)), inverse(p2));
        ChainComplex c2{z, 0, {2, 3, 2}, {to_sparse(nd1), to_sparse(nd2)}, true, true, {}};
        auto h = homology_of_complex(c2);
        REQUIRE(h.size() == base.size());
        for (std::size_t i = 0; i < h.size(); ++i) CHECK(h[i].module == base[i].module);
    }
}

TEST_CASE("subquotient over Z/p^k and kernels") {
    auto r9 = Ring::cyclic(3, 2);
    IntMat a = int_identity(1), b = int_zero(1, 1);
    b(0, 0) = 3;
    auto d = subquotient(r9, a, b);
    CHECK(d.rank == 0);
    CHECK(d.torsion == std::vector<Integer>{3});
    CHECK(subquotient(r9, a, int_zero(1, 0)).rank == 1);
    // kernel of multiplication by 3 on Z/9 is 3Z/9 ≅ Z/3
    IntMat three = int_zero(1, 1);
    three(0, 0) = 3;
    auto k = kernel_generators(r9, three);
    auto kd = subquotient(r9, k, int_zero(1, 0));
    CHECK(kd.torsion == std::vector<Integer>{3});
}

TEST_CASE("quotient coordinates") {
    Qf f;
    using V = DenseVec<mpq_class>;
    std::vector<V> sub = {{1, 1, 0}};
    std::vector<V> gens = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Quotient<Qf> q(f, 3, sub, gens);
    CHECK(q.dim() == 2);
    auto c = q.coords({0, 1, 0});  // ≡ -(1,0,0)
    CHECK(c[0] == -1);
    CHECK(c[1] == 0);
    CHECK(q.in_sub({2, 2, 0}));
    CHECK_FALSE(q.in_sub({0, 0, 1}));
}
