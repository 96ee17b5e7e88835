#include "cyclotome/fdm/fdm.hpp"

#include "cyclotome/linalg/error.hpp"
#include "int_ops.hpp"

namespace cyclotome {

using namespace int_ops;

void check_well_formed(const FDM& m) {
    require(m.base.kind() == RingKind::Integers || m.base.is_modular(), ErrorKind::Validation,
            "FDM base must be Z/p^k or Z, got " + m.base.name());
    require(m.p >= 2 && is_prime(m.p), ErrorKind::Validation, "FDM prime must be a prime");
    require(!m.base.is_modular() || m.base.prime() == m.p, ErrorKind::Validation, "FDM prime differs from the base");
    require(m.b > m.a, ErrorKind::Validation, "FDM filtration needs a < b");
    const auto steps = static_cast<std::size_t>(m.b - m.a);
    require(m.filtration.size() == steps && m.phi.size() == steps, ErrorKind::Validation,
            "FDM needs one filtration step and one phi per index a..b-1");
    require(m.relations.rows() == m.dim || m.relations.cols() == 0, ErrorKind::Validation, "FDM relations have wrong height");
    for (std::size_t i = 0; i < steps; ++i) {
        require(m.filtration[i].rows() == m.dim || m.filtration[i].cols() == 0, ErrorKind::Validation,
                "FDM filtration step has wrong height");
        require(m.phi[i].cols() == m.filtration[i].cols() && (m.phi[i].rows() == m.dim || m.phi[i].cols() == 0),
                ErrorKind::Validation, "phi_" + std::to_string(m.a + static_cast<int>(i)) + " does not match F^i");
    }
    // F^a must be all of M
    require(spans(m.base, m.filtration[0], m.relations, int_identity(m.dim)), ErrorKind::Validation,
            "F^a must equal M");
}

FDM tate_object(const Ring& base, std::uint32_t p, int i) {
    FDM t;
    t.base = base;
    t.p = p;
    t.dim = 1;
    t.relations = int_zero(1, 0);
    t.a = i;
    t.b = i + 1;
    t.filtration = {int_identity(1)};
    t.phi = {int_identity(1)};
    return t;
}

FilteredPiece filtered_piece(const FDM& m, int j) {
    if (j >= m.b) return {int_zero(m.dim, 0), int_zero(m.dim, 0)};
    if (j < m.a) return {m.step(m.a), scaled(m.base, m.phi_at(m.a), power(m.p, m.a - j))};
    return {m.step(j), m.phi_at(j)};
}

FDM direct_sum(const FDM& x, const FDM& y) {
    require(x.base == y.base && x.p == y.p, ErrorKind::Validation, "direct sum of FDMs over different bases");
    FDM s;
    s.base = x.base;
    s.p = x.p;
    s.dim = x.dim + y.dim;
    s.a = std::min(x.a, y.a);
    s.b = std::max(x.b, y.b);
    auto block = [&](const IntMat& u, const IntMat& v) {
        IntMat out = int_zero(s.dim, u.cols() + v.cols());
        for (std::size_t i = 0; i < u.rows(); ++i)
            for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) = u(i, j);
        for (std::size_t i = 0; i < v.rows(); ++i)
            for (std::size_t j = 0; j < v.cols(); ++j) out(x.dim + i, u.cols() + j) = v(i, j);
        return out;
    };
    s.relations = block(x.relations, y.relations);
    for (int i = s.a; i < s.b; ++i) {
        auto px = filtered_piece(x, i);
        auto py = filtered_piece(y, i);
        s.filtration.push_back(block(px.gens, py.gens));
        s.phi.push_back(block(px.phi, py.phi));
    }
    return s;
}

FDMValidation fdm_validate(const FDM& m) {
    check_well_formed(m);
    FDMValidation v;
    const Ring& R = m.base;
    for (int i = m.a; i < m.b; ++i) {
        const auto& g = m.step(i);
        const auto& f = m.phi_at(i);
        if (g.cols() == 0) continue;
        IntMat kernel = preimage_generators(R, g, m.relations);
        if (kernel.cols() && !spans(R, int_zero(m.dim, 0), m.relations, int_multiply(f, kernel))) {
            v.well_defined = false;
            v.failures.push_back("phi_" + std::to_string(i) + " is not well defined on F^" + std::to_string(i));
        }
        if (i + 1 >= m.b) continue;
        const auto& next = m.step(i + 1);
        if (!spans(R, g, m.relations, next)) {
            v.nested = false;
            v.failures.push_back("F^" + std::to_string(i + 1) + " is not inside F^" + std::to_string(i));
            continue;
        }
        IntMat c = express(R, g, m.relations, next, "nesting");
        IntMat diff = minus(R, int_multiply(f, c), scaled(R, m.phi_at(i + 1), m.p));
        if (!spans(R, int_zero(m.dim, 0), m.relations, diff)) {
            v.axiom_i = false;
            v.failures.push_back("phi_" + std::to_string(i) + " on F^" + std::to_string(i + 1) + " differs from p phi_" +
                                 std::to_string(i + 1));
        }
    }
    IntMat images = int_zero(m.dim, 0);
    for (int i = m.a; i < m.b; ++i) images = cat(images, m.phi_at(i), m.dim);
    IntMat all = cat(images, m.relations, m.dim);
    const ModuleDescriptor coker =
        all.cols() ? cokernel_descriptor(R, all) : ModuleDescriptor{R, m.dim, {}};
    if (!locally_zero(coker, m.p)) {
        v.axiom_ii = false;
        v.failures.push_back("the phi_i are not jointly surjective (cokernel " + coker.str() + ")");
    }
    return v;
}

TildeResult fdm_tilde(const FDM& m) {
    const FDMValidation v = fdm_validate(m);
    const Ring& R = m.base;
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (int i = m.a; i < m.b; ++i) {
        offset.push_back(total);
        total += m.step(i).cols();
    }
    std::vector<DenseVec<Integer>> rels;
    auto slot_of = [&](int i) { return offset[static_cast<std::size_t>(i - m.a)]; };
    for (int i = m.a; i < m.b; ++i) {
        const auto& g = m.step(i);
        if (g.cols() == 0) continue;
        IntMat kernel = preimage_generators(R, g, m.relations);
        for (std::size_t c = 0; c < kernel.cols(); ++c) {
            DenseVec<Integer> col(total, Integer(0));
            for (std::size_t r = 0; r < g.cols(); ++r) col[slot_of(i) + r] = kernel(r, c);
            rels.push_back(std::move(col));
        }
        if (i == m.a) continue;
        // t - p on the generators of slot i
        IntMat t = express(R, m.step(i - 1), m.relations, g, "filtration is not nested");
        for (std::size_t e = 0; e < g.cols(); ++e) {
            DenseVec<Integer> col(total, Integer(0));
            for (std::size_t r = 0; r < t.rows(); ++r) col[slot_of(i - 1) + r] = t(r, e);
            col[slot_of(i) + e] -= m.p;
            rels.push_back(std::move(col));
        }
    }
    IntMat rel = int_zero(total, rels.size());
    for (std::size_t c = 0; c < rels.size(); ++c)
        for (std::size_t r = 0; r < total; ++r) rel(r, c) = rels[c][r];
    rel = reduce_entries(R, std::move(rel));

    TildeResult out;
    out.tilde = rel.cols() ? cokernel_descriptor(R, rel) : ModuleDescriptor{R, total, {}};
    if (R.kind() == RingKind::PrimeField) out.tilde.torsion.clear();
    out.has_phi = v.well_defined && v.nested && v.axiom_i;
    if (!out.has_phi) return out;
    out.surjective = v.axiom_ii;
    IntMat phi = int_zero(m.dim, 0);
    for (int i = m.a; i < m.b; ++i) phi = cat(phi, m.phi_at(i), m.dim);
    IntMat kernel = total ? preimage_generators(R, phi, m.relations) : int_zero(0, 0);
    out.injective = total == 0 || locally_zero(span_quotient(R, kernel, rel, total), m.p);
    return out;
}

FDM fdm_tensor(const FDM& x, const FDM& y) {
    check_well_formed(x);
    check_well_formed(y);
    require(x.base == y.base && x.p == y.p, ErrorKind::Validation, "tensor product of FDMs over different bases");
    FDM t;
    t.base = x.base;
    t.p = x.p;
    t.dim = x.dim * y.dim;
    t.relations = cat(kron(x.relations, int_identity(y.dim)), kron(int_identity(x.dim), y.relations), t.dim);
    t.a = x.a + y.a;
    t.b = x.b + y.b - 1;
    for (int i = t.a; i < t.b; ++i) {
        IntMat gens = int_zero(t.dim, 0), phi = int_zero(t.dim, 0);
        for (int s = std::max(x.a, i - y.b + 1); s <= std::min(x.b - 1, i - y.a); ++s) {
            auto px = filtered_piece(x, s);
            auto py = filtered_piece(y, i - s);
            gens = cat(gens, kron(px.gens, py.gens), t.dim);
            phi = cat(phi, reduce_entries(t.base, kron(px.phi, py.phi)), t.dim);
        }
        t.filtration.push_back(std::move(gens));
        t.phi.push_back(std::move(phi));
    }
    return t;
}

FDM tate_twist(const FDM& m, int n) { return fdm_tensor(m, tate_object(m.base, m.p, n)); }

FDMDescriptor describe(const FDM& m) {
    check_well_formed(m);
    const Ring& R = m.base;
    FDMDescriptor d;
    d.a = m.a;
    d.b = m.b;
    d.module = span_quotient(R, int_identity(m.dim), m.relations, m.dim);
    for (int i = m.a; i < m.b; ++i) {
        d.steps.push_back(span_quotient(R, m.step(i), m.relations, m.dim));
        const IntMat below = cat(filtered_piece(m, i + 1).gens, m.relations, m.dim);
        d.graded.push_back(span_quotient(R, m.step(i), below, m.dim));
        d.images.push_back(span_quotient(R, m.phi_at(i), m.relations, m.dim));
    }
    return d;
}

SyntomicResult syntomic_cohomology(const FDMComplex& c, int j) {
    const std::size_t T = c.terms.size();
    require(T > 0, ErrorKind::Input, "syntomic cohomology of an empty complex");
    require(c.d.size() + 1 == T, ErrorKind::Validation, "FDM complex needs one differential between consecutive terms");
    const Ring& R = c.terms[0].base;
    std::vector<FilteredPiece> piece;
    for (const auto& m : c.terms) {
        check_well_formed(m);
        require(m.base == R && m.p == c.terms[0].p, ErrorKind::Validation, "FDM complex mixes bases");
        piece.push_back(filtered_piece(m, j));
    }
    // restriction of d to F^j in generator coordinates, with phi compatibility
    std::vector<IntMat> dF;
    for (std::size_t q = 0; q + 1 < T; ++q) {
        const auto& src = c.terms[q];
        const auto& dst = c.terms[q + 1];
        require(c.d[q].rows() == dst.dim && c.d[q].cols() == src.dim, ErrorKind::Validation, "differential has wrong shape");
        require(q + 2 >= T || spans(R, int_zero(c.terms[q + 2].dim, 0), c.terms[q + 2].relations,
                                    int_multiply(c.d[q + 1], c.d[q])),
                ErrorKind::Validation, "d^2 != 0 in the FDM complex");
        const IntMat image = reduce_entries(R, int_multiply(c.d[q], piece[q].gens));
        IntMat x = express(R, piece[q + 1].gens, dst.relations, image, "differential leaves F^" + std::to_string(j));
        const IntMat lhs = reduce_entries(R, int_multiply(c.d[q], piece[q].phi));
        const IntMat rhs = reduce_entries(R, int_multiply(piece[q + 1].phi, x));
        require(spans(R, int_zero(dst.dim, 0), dst.relations, minus(R, lhs, rhs)), ErrorKind::Validation,
                "differential does not commute with phi_" + std::to_string(j));
        dF.push_back(std::move(x));
    }
    // fibre: degree q is F^j M^q + M^{q-1}; d(x, y) = (d x, (1 - phi) x - d y)
    auto gens_at = [&](std::size_t q) -> std::pair<std::size_t, std::size_t> {
        return {q < T ? piece[q].gens.cols() : 0, q >= 1 ? c.terms[q - 1].dim : 0};
    };
    std::vector<Presentation> P;
    for (std::size_t q = 0; q <= T; ++q) {
        auto [g, m] = gens_at(q);
        Presentation pr{g + m, int_zero(g + m, 0)};
        std::vector<DenseVec<Integer>> rels;
        if (g) {
            IntMat k = preimage_generators(R, piece[q].gens, c.terms[q].relations);
            for (std::size_t col = 0; col < k.cols(); ++col) {
                DenseVec<Integer> v(g + m, Integer(0));
                for (std::size_t r = 0; r < g; ++r) v[r] = k(r, col);
                rels.push_back(std::move(v));
            }
        }
        if (m) {
            const auto& rel = c.terms[q - 1].relations;
            for (std::size_t col = 0; col < rel.cols(); ++col) {
                DenseVec<Integer> v(g + m, Integer(0));
                for (std::size_t r = 0; r < m; ++r) v[g + r] = rel(r, col);
                rels.push_back(std::move(v));
            }
        }
        pr.relations = int_zero(g + m, rels.size());
        for (std::size_t col = 0; col < rels.size(); ++col)
            for (std::size_t r = 0; r < g + m; ++r) pr.relations(r, col) = rels[col][r];
        P.push_back(std::move(pr));
    }
    std::vector<IntMat> D;
    for (std::size_t q = 0; q < T; ++q) {
        auto [g0, m0] = gens_at(q);
        auto [g1, m1] = gens_at(q + 1);
        IntMat out = int_zero(g1 + m1, g0 + m0);
        if (q + 1 < T)
            for (std::size_t r = 0; r < g1; ++r)
                for (std::size_t k = 0; k < g0; ++k) out(r, k) = dF[q](r, k);
        const IntMat f = minus(R, piece[q].gens, piece[q].phi);
        for (std::size_t r = 0; r < m1; ++r) {
            for (std::size_t k = 0; k < g0; ++k) out(g1 + r, k) = f(r, k);
            if (q >= 1)
                for (std::size_t k = 0; k < m0; ++k) out(g1 + r, g0 + k) = -c.d[q - 1](r, k);
        }
        D.push_back(reduce_entries(R, std::move(out)));
    }
    SyntomicResult res;
    res.j = j;
    for (std::size_t q = 0; q <= T; ++q) {
        const IntMat in = q ? D[q - 1] : int_zero(P[q].gens, 0);
        const IntMat out = q < T ? D[q] : int_zero(0, P[q].gens);
        const Presentation dst = q < T ? P[q + 1] : Presentation::free(0);
        res.h.push_back(presented_homology(R, in, P[q], out, dst));
    }
    return res;
}

// nested filtration adapted to a random basis; phi_i vanishes on F^{i+1}
FDM random_torsion_fdm(std::mt19937& rng, std::uint32_t p, std::size_t max_dim) {
    std::uniform_int_distribution<int> pick_dim(1, static_cast<int>(max_dim)), pick_len(1, 3);
    std::uniform_int_distribution<long> entry(0, p - 1);
    FDM m;
    m.base = Ring::prime_field(p);
    m.p = p;
    m.dim = static_cast<std::size_t>(pick_dim(rng));
    m.relations = int_zero(m.dim, 0);
    m.a = 0;
    m.b = pick_len(rng);
    IntMat basis = int_zero(m.dim, m.dim);
    do {
        for (std::size_t i = 0; i < m.dim; ++i)
            for (std::size_t j = 0; j < m.dim; ++j) basis(i, j) = entry(rng);
    } while (!cokernel_descriptor(m.base, basis).is_zero());
    std::vector<std::size_t> sizes{m.dim};
    for (int i = 1; i < m.b; ++i) sizes.push_back(std::uniform_int_distribution<std::size_t>(0, sizes.back())(rng));
    for (int i = 0; i < m.b; ++i) {
        const std::size_t d = sizes[static_cast<std::size_t>(i)];
        const std::size_t below = i + 1 < m.b ? sizes[static_cast<std::size_t>(i + 1)] : 0;
        IntMat g = int_zero(m.dim, d), f = int_zero(m.dim, d);
        for (std::size_t c = 0; c < d; ++c)
            for (std::size_t r = 0; r < m.dim; ++r) {
                g(r, c) = basis(r, c);
                if (c >= below) f(r, c) = entry(rng);
            }
        m.filtration.push_back(std::move(g));
        m.phi.push_back(std::move(f));
    }
    return m;
}

SyntomicResult syntomic_cohomology(const FDM& m, int j) { return syntomic_cohomology(FDMComplex{{m}, {}}, j); }

}  // namespace cyclotome
