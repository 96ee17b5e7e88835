#include "cyclotome/cartier/cartier.hpp"

#include <algorithm>
#include <memory>

#include "cyclotome/algebra/constructions.hpp"
#include "cyclotome/cartier/tate.hpp"
#include "cyclotome/cyclic/chains.hpp"
#include "cyclotome/fdm/fdm.hpp"
#include "cyclotome/hodge/spectral.hpp"
#include "cyclotome/linalg/fields.hpp"
#include "cyclotome/linalg/parallel.hpp"

namespace cyclotome {

namespace {

constexpr std::size_t tensor_bound = 4096;

Integer residue(const Scalar& s, std::uint32_t p) {
    require(s.get_den() == 1 || mpz_divisible_ui_p(s.get_den().get_mpz_t(), p) == 0, ErrorKind::Internal,
            "non-integral scalar");
    Integer num = s.get_num(), den = s.get_den(), inv;
    const Integer P = p;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    Integer r = (num * inv) % P;
    if (r < 0) r += P;
    return r;
}

IntMat to_int(const SparseMatrix& m, std::uint32_t p) {
    IntMat out = int_zero(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.col(j)) out(e.index, j) = residue(e.value, p);
    return out;
}

IntMat column_of(const AlgVec& v, std::size_t rows, std::uint32_t p) {
    IntMat out = int_zero(rows, 1);
    for (const auto& e : v) out(e.index, 0) = residue(e.value, p);
    return out;
}

std::size_t rank_fp(const IntMat& m, std::uint32_t p) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return m.rows() - cokernel_descriptor(Ring::prime_field(p), m).rank;
}

IntMat join(const IntMat& a, const IntMat& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    return hstack(a, b);
}

std::uint32_t field_prime(const Algebra& a, const std::string& what) {
    require(a.ring.kind() == RingKind::PrimeField, ErrorKind::UnsupportedRing, what + " needs an algebra over F_p");
    return a.ring.prime();
}

int sigma_class(const Algebra& smash) {
    const auto& g = smash.sectors->group;
    return g.class_of(g.size() > 1 ? 1 : 0);
}

std::array<std::size_t, 2> hp_dims(const HomologyTable& t, int sector) {
    return {t.dim("HP", 0, -1, sector), t.dim("HP", 1, -1, sector)};
}

// S kills every sector class although HC is nonzero at the top of the window:
// the inverse limit collapses and says nothing about the periodic theory.
bool sector_collapses(const Algebra& a, int N, int sector, const std::array<std::size_t, 2>& hp) {
    if (hp[0] != 0 || hp[1] != 0) return false;
    const auto hc = cyclic_homology(a, N).table;
    return hc.dim("HC", N, -1, sector) != 0 || hc.dim("HC", N - 1, -1, sector) != 0;
}

bool hp_reliable(const HomologyTable& t, int sector) {
    return t.has({"HP", 0, -1, sector}) && t.has({"HP", 1, -1, sector}) && !t.unreliable.count({"HP", 0, -1, sector}) &&
           !t.unreliable.count({"HP", 1, -1, sector});
}

template <class F>
void check_sectors(const F& f, const Algebra& A, int N, SectorReport& rep) {
    const auto& G = A.sectors->group;
    ChainOperators<F> all(f, A, Split{}, ChainOptions{});
    std::vector<std::unique_ptr<ChainOperators<F>>> parts;
    for (std::size_t s = 0; s < G.conjugacy_classes().size(); ++s)
        parts.push_back(std::make_unique<ChainOperators<F>>(f, A, Split{-1, static_cast<int>(s)}, ChainOptions{}));
    for (int q = 0; q <= N + 1; ++q) {
        const ChainSpace& sp = all.space(q, -1);
        std::vector<int> cls(sp.size());
        std::vector<std::size_t> count(parts.size(), 0);
        for (std::size_t i = 0; i < sp.size(); ++i) {
            int g = G.identity();
            for (int k = 0; k <= q; ++k) g = G.mul(g, A.sectors->degree[sp.tuple(i)[k]]);
            cls[i] = G.class_of(g);
            ++count[static_cast<std::size_t>(cls[i])];
        }
        rep.cells += sp.size();
        for (std::size_t s = 0; s < parts.size(); ++s)
            if (parts[s]->dim(q, -1) != count[s]) rep.partition = false;
        auto stays = [&](const auto& m, const std::vector<int>& target) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                for (const auto& e : m.col(j))
                    if (target[e.index] != cls[j]) return false;
            return true;
        };
        if (!stays(all.t(q, -1), cls)) rep.stable = false;
        if (q >= 1) {
            const ChainSpace& lower = all.space(q - 1, -1);
            std::vector<int> lc(lower.size());
            for (std::size_t i = 0; i < lower.size(); ++i) {
                int g = G.identity();
                for (int k = 0; k < q; ++k) g = G.mul(g, A.sectors->degree[lower.tuple(i)[k]]);
                lc[i] = G.class_of(g);
            }
            if (!stays(all.b(q, -1), lc)) rep.stable = false;
        }
        if (q <= N) {
            const ChainSpace& upper = all.space(q + 1, -1);
            std::vector<int> uc(upper.size());
            for (std::size_t i = 0; i < upper.size(); ++i) {
                int g = G.identity();
                for (int k = 0; k <= q + 1; ++k) g = G.mul(g, A.sectors->degree[upper.tuple(i)[k]]);
                uc[i] = G.class_of(g);
            }
            if (!stays(all.connes_B(q, -1), uc)) rep.stable = false;
        }
    }
}

}  // namespace

QuasiFrobenius quasi_frobenius_from(const Algebra& a, std::uint32_t p, SparseMatrix phi) {
    field_prime(a, "quasi-Frobenius map");
    require(a.ring.prime() == p, ErrorKind::Input, "quasi-Frobenius prime differs from the characteristic");
    QuasiFrobenius q{p, a, cyclic_tensor_power(a, static_cast<int>(p), tensor_bound), std::move(phi)};
    require(q.phi.rows() == q.target.dim() && q.phi.cols() == a.dim(), ErrorKind::Validation,
            "quasi-Frobenius matrix has wrong shape");
    return q;
}

QuasiFrobenius diagonal_quasi_frobenius(const GroupTable& g, std::uint32_t p) {
    const Algebra a = group_algebra(g, Ring::prime_field(p));
    const std::size_t d = a.dim();
    std::size_t N = 1;
    for (std::uint32_t i = 0; i < p; ++i) N *= d;
    SparseMatrix phi(N, d);
    for (std::size_t i = 0; i < d; ++i)
        phi.col(i) = {{static_cast<std::uint32_t>(diagonal_index(d, static_cast<int>(p), i)), Scalar(1)}};
    return quasi_frobenius_from(a, p, std::move(phi));
}

QuasiFrobeniusReport quasi_frobenius_validate(const QuasiFrobenius& q, int window) {
    QuasiFrobeniusReport r;
    const Algebra& A = q.source;
    const Algebra& T = q.target;
    const std::uint32_t p = q.p;
    const Ring& R = A.ring;
    auto image = [&](const AlgVec& x) { return apply(R, q.phi, x); };
    auto same = [&](AlgVec x, AlgVec y) {
        canonicalize(RingScalar{R}, x);
        canonicalize(RingScalar{R}, y);
        return x == y;
    };
    if (!same(image(A.unit), T.unit)) {
        r.algebra_map = false;
        r.failures.push_back("unit is not preserved");
    }
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
            if (!same(image(A.product(i, j)), T.multiply(q.phi.col(i), q.phi.col(j)))) {
                r.algebra_map = false;
                r.failures.push_back("Phi(" + A.basis[i] + " " + A.basis[j] + ") != Phi(" + A.basis[i] + ") Phi(" +
                                     A.basis[j] + ")");
            }
    require(T.action.has_value() && T.action->matrices.size() > 1, ErrorKind::Internal, "tensor power lacks its rotation");
    const SparseMatrix& sigma = T.action->matrices[1];
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (!same(apply(R, sigma, q.phi.col(i)), q.phi.col(i))) {
            r.equivariant = false;
            r.failures.push_back("sigma Phi(" + A.basis[i] + ") != Phi(" + A.basis[i] + ")");
        }
    const CyclicModule M{Ring::prime_field(p), static_cast<int>(p), to_int(sigma, p)};
    const IntMat phi = to_int(q.phi, p);
    IntMat diff = phi;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        const std::size_t x = diagonal_index(A.dim(), static_cast<int>(p), i);
        diff(x, i) -= 1;
    }
    diff = reduce_entries(M.ring, std::move(diff));
    for (int deg = 0; deg < window; ++deg) {
        const ClassRank cr = tate_class_rank(M, deg, phi);
        if (!cr.cocycles || !tate_coboundaries(M, deg, diff)) {
            r.tate = false;
            r.failures.push_back("Tate degree " + std::to_string(deg) + ": Phi differs from the standard map");
        }
    }
    return r;
}

SectorReport twisted_sectors(const Algebra& b, int N) {
    require(b.action.has_value(), ErrorKind::Input, "twisted sectors need a group action on " + b.name);
    require(b.ring.is_field(), ErrorKind::UnsupportedRing, "twisted sectors need a field");
    const Algebra smash = smash_product(b);
    SectorReport rep;
    rep.algebra = smash.name;
    rep.classes = static_cast<int>(smash.sectors->group.conjugacy_classes().size());
    const Algebra A = chain_ready(smash);
    visit_field(A.ring, [&](auto f) { check_sectors(f, A, N, rep); });
    rep.hh = hochschild_homology(smash, N);
    rep.hc = cyclic_homology(smash, N).table;
    rep.hp = periodic_cyclic(smash, N).table;
    Algebra plain = smash;
    plain.sectors.reset();
    const auto whole = hochschild_homology(plain, N);
    for (int n = 0; n <= N; ++n) {
        std::size_t sum = 0;
        for (int s = 0; s < rep.classes; ++s) sum += rep.hh.dim("HH", n, -1, s);
        if (sum != whole.dim("HH", n)) rep.sums_match = false;
    }
    return rep;
}

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Agree: return "agree";
    case Verdict::Disagree: return "disagree";
    default: return "inconclusive";
    }
}

std::vector<SectorIsoCheck> sector_iso_checks(const Algebra& b, int N) {
    const std::uint32_t p = field_prime(b, "sector comparison");
    const GroupTable Cp = GroupTable::cyclic(static_cast<int>(p));
    auto finish = [](SectorIsoCheck& c) {
        if (c.lhs_reliable && c.rhs_reliable) c.verdict = c.lhs == c.rhs ? Verdict::Agree : Verdict::Disagree;
    };
    std::vector<SectorIsoCheck> out;
    {
        SectorIsoCheck c;
        c.name = "sigma sector of B#Z/p vs tilde of HP(B)";
        const Algebra S = smash_product(with_trivial_action(b, Cp));
        const auto hp = periodic_cyclic(S, N).table;
        const int s = sigma_class(S);
        c.lhs = hp_dims(hp, s);
        c.lhs_reliable = hp_reliable(hp, s);
        if (c.lhs_reliable && sector_collapses(S, N, s, c.lhs)) {
            c.lhs_reliable = false;
            c.note = "sigma-sector HC survives but S vanishes on it";
        }
        // tilde of the Hodge-filtered HP: over F_p its graded pieces are the
        // weight-0 terms of the last page, one filtration step per degree
        const int r_max = 2;
        const auto pages = spectral_pages(b, N, r_max);
        c.rhs_reliable = pages.transitions_ok && pages.dim(1, 0, N) == 0 && pages.dim(1, 0, N - 1) == 0;
        for (int parity = 0; parity < 2; ++parity) {
            std::vector<std::size_t> graded;
            for (int n = parity; n <= N; n += 2) graded.push_back(pages.dim(r_max + 1, 0, n));
            FDM m;
            m.base = Ring::prime_field(p);
            m.p = p;
            for (auto g : graded) m.dim += g;
            m.relations = int_zero(m.dim, 0);
            m.a = 0;
            m.b = static_cast<int>(graded.size());
            std::size_t start = 0;
            for (std::size_t i = 0; i < graded.size(); ++i) {
                IntMat gens = int_zero(m.dim, m.dim - start);
                for (std::size_t k = start; k < m.dim; ++k) gens(k, k - start) = 1;
                m.filtration.push_back(gens);
                m.phi.push_back(int_zero(m.dim, gens.cols()));
                start += graded[i];
            }
            if (m.dim == 0) continue;
            c.rhs[static_cast<std::size_t>(parity)] = fdm_tilde(m).tilde.rank;
        }
        finish(c);
        out.push_back(c);
    }
    {
        SectorIsoCheck c;
        c.name = "sigma sector of B^(xp)#Z/p vs HP(B)";
        const Algebra S = smash_product(cyclic_tensor_power(b, static_cast<int>(p), tensor_bound));
        const auto hp = periodic_cyclic(S, N).table;
        const int s = sigma_class(S);
        c.lhs = hp_dims(hp, s);
        c.lhs_reliable = hp_reliable(hp, s);
        if (c.lhs_reliable && sector_collapses(S, N, s, c.lhs)) {
            c.lhs_reliable = false;
            c.note = "sigma-sector HC survives but S vanishes on it";
        }
        const auto base = periodic_cyclic(b, N).table;
        c.rhs = hp_dims(base, -1);
        c.rhs_reliable = hp_reliable(base, -1);
        finish(c);
        out.push_back(c);
    }
    return out;
}

CartierDimReport cartier_dim_check(const Algebra& a, int N) {
    CartierDimReport r;
    r.algebra = a.name;
    r.p = field_prime(a, "Cartier dimension check");
    r.N = N;
    require(N >= 2, ErrorKind::Input, "Cartier dimension check needs N >= 2");
    r.smooth_flag = a.flags.smooth.value_or(false);
    if (!r.smooth_flag) r.notes.push_back("not flagged smooth: " + a.flags.justification);
    if (a.w2_lift) {
        const Algebra& L = *a.w2_lift;
        r.lift_ok = L.ring == Ring::cyclic(r.p, 2) && L.dim() == a.dim();
        if (r.lift_ok) {
            const Algebra red = change_ring(L, a.ring);
            r.lift_ok = red.products == a.products && red.unit == a.unit;
        }
        if (!r.lift_ok) r.notes.push_back("W2-lift witness does not reduce to the algebra");
    } else {
        r.notes.push_back("no W2-lift witness recorded");
    }
    const int lo = 2 * static_cast<int>(r.p) - 1, hi = std::max(N, 2 * static_cast<int>(r.p));
    const auto coh = hochschild_cohomology(a, hi);
    r.cohomology_vanishes = true;
    for (int i = lo; i <= hi; ++i)
        if (coh.dim("HH^", i) != 0) r.cohomology_vanishes = false;
    if (!r.cohomology_vanishes) r.notes.push_back("HH^i does not vanish on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const auto hh = hochschild_homology(a, N);
    for (int n = 0; n <= N; ++n) {
        r.hh.push_back(hh.dim("HH", n));
        r.hh_pattern[static_cast<std::size_t>(n % 2)] += r.hh.back();
    }
    r.window_ok = r.hh[static_cast<std::size_t>(N)] == 0 && r.hh[static_cast<std::size_t>(N - 1)] == 0;
    const auto hp = periodic_cyclic(a, N).table;
    r.hp = hp_dims(hp, -1);
    r.hp_reliable = hp_reliable(hp, -1);
    r.patterns_equal = r.hh_pattern == r.hp;
    return r;
}

CartierMapReport cartier_map_explicit(const QuasiFrobenius& q, int N) {
    const Algebra& A = q.source;
    const std::uint32_t p = q.p;
    require(A.dim() <= 4 && p <= 3 && N <= 6, ErrorKind::Resource,
            "explicit Cartier map is limited to dim A <= 4, p <= 3, N <= 6");
    const auto check = quasi_frobenius_validate(q);
    require(check.ok(), ErrorKind::Validation,
            "quasi-Frobenius map fails validation: " + (check.failures.empty() ? std::string() : check.failures[0]));
    CartierMapReport r;
    r.p = p;
    const std::size_t d = A.dim();
    IntMat comm = int_zero(d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            AlgVec c = A.product(i, j);
            for (const auto& e : A.product(j, i)) c.push_back({e.index, -e.value});
            canonicalize(RingScalar{A.ring}, c);
            if (!c.empty()) comm = join(comm, column_of(c, d, p));
        }
    // a -> Phi(a) = sum c (x1..xp) -> sum c x1 x2 .. xp
    IntMat M = int_zero(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (const auto& e : q.phi.col(i)) {
            std::vector<std::uint32_t> digits(p);
            std::size_t x = e.index;
            for (int k = static_cast<int>(p) - 1; k >= 0; --k) {
                digits[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(x % d);
                x /= d;
            }
            AlgVec prod = A.basis_vector(digits[0]);
            for (std::size_t k = 1; k < p; ++k) prod = A.multiply(prod, A.basis_vector(digits[k]));
            const Integer c = residue(e.value, p);
            for (const auto& t : prod) M(t.index, i) += c * residue(t.value, p);
        }
    M = reduce_entries(Ring::prime_field(p), std::move(M));
    const std::size_t rc = rank_fp(comm, p);
    r.hh0 = d - rc;
    r.rank = rank_fp(join(M, comm), p) - rc;
    if (comm.cols()) r.well_defined = rank_fp(join(comm, int_multiply(M, comm)), p) == rc;
    for (std::size_t i = 0; i < d; ++i) {
        r.matrix.emplace_back();
        for (std::size_t j = 0; j < d; ++j) r.matrix.back().push_back(M(i, j).get_si());
    }
    const auto hh = hochschild_homology(A, N);
    require(hh.dim("HH", 0) == r.hh0, ErrorKind::Invariant, "HH_0 disagrees with A/[A,A]");
    r.higher_vanish = true;
    for (int n = 1; n <= N; ++n)
        if (hh.dim("HH", n) != 0) r.higher_vanish = false;
    const auto hp = periodic_cyclic(A, N).table;
    r.hp = hp_dims(hp, -1);
    r.hp_reliable = hp_reliable(hp, -1);
    r.transported = r.hp_reliable && r.hp[0] == r.hh0 && r.higher_vanish;
    if (!r.higher_vanish) r.notes.push_back("components from positive Hochschild degrees are not constructed");
    if (!r.transported) r.notes.push_back("degree-0 map not transported to HP");
    return r;
}

}  // namespace cyclotome
