#include "cyclotome/linalg/module.hpp"

#include <algorithm>
#include <sstream>

#include "cyclotome/linalg/dense.hpp"
#include "cyclotome/linalg/error.hpp"
#include "cyclotome/linalg/fields.hpp"

namespace cyclotome {

std::size_t ModuleDescriptor::length() const {
    require(ring.is_modular(), ErrorKind::UnsupportedRing, "length needs Z/p^k");
    std::size_t n = rank * static_cast<std::size_t>(ring.precision());
    for (const auto& t : torsion) {
        Integer x = t;
        while (x % ring.prime() == 0) {
            x /= ring.prime();
            ++n;
        }
    }
    return n;
}

std::string ModuleDescriptor::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (rank > 0) {
        sep();
        switch (ring.kind()) {
        case RingKind::CyclicRing: os << "(" << ring.name() << ")"; break;
        default: os << ring.name(); break;
        }
        if (rank != 1) os << "^" << rank;
    }
    for (const auto& t : torsion) {
        sep();
        os << "Z/" << t.get_str();
    }
    return os.str();
}

IntMat hstack(const IntMat& a, const IntMat& b) {
    require(a.rows() == b.rows() || a.cols() == 0 || b.cols() == 0, ErrorKind::Internal, "hstack: row mismatch");
    const std::size_t rows = a.cols() ? a.rows() : b.rows();
    IntMat out = int_zero(rows, a.cols() + b.cols());
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

IntMat reduce_entries(const Ring& ring, IntMat m) {
    if (!ring.is_modular()) return m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            m(i, j) %= ring.modulus();
            if (m(i, j) < 0) m(i, j) += ring.modulus();
        }
    return m;
}

namespace {

Integer power(std::uint32_t p, int e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
    return r;
}

int valuation_of(Integer x, std::uint32_t p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

std::size_t rational_rank(const IntMat& m) {
    Qf f;
    DenseMat<mpq_class> q(m.rows(), m.cols(), mpq_class(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
    return dense_rank(f, std::move(q));
}

ModuleDescriptor from_divisors(const Ring& ring, std::size_t free_rank, const std::vector<Integer>& divisors) {
    ModuleDescriptor d{ring, free_rank, {}};
    for (const auto& e : divisors) {
        if (e == 1) continue;
        if (ring.is_modular()) {
            int a = valuation_of(e, ring.prime());
            if (a >= ring.precision())
                ++d.rank;
            else if (a > 0)
                d.torsion.push_back(power(ring.prime(), a));
        } else {
            d.torsion.push_back(e);
        }
    }
    if (ring.kind() == RingKind::PrimeField) d.torsion.clear();
    return d;
}

}  // namespace

ModuleDescriptor cokernel_descriptor(const Ring& ring, const IntMat& relations) {
    const std::size_t n = relations.rows();
    switch (ring.kind()) {
    case RingKind::Rationals: return ModuleDescriptor::vector_space(ring, n - rational_rank(relations));
    case RingKind::Integers: {
        auto s = smith_integers(relations, false);
        return from_divisors(ring, n - s.rank, s.diagonal);
    }
    default: {
        auto s = smith_modular(relations, ring.prime(), ring.precision(), false);
        return from_divisors(ring, n - s.rank, s.diagonal);
    }
    }
}

ModuleDescriptor direct_sum(const ModuleDescriptor& a, const ModuleDescriptor& b) {
    require(a.ring == b.ring, ErrorKind::Internal, "direct_sum: ring mismatch");
    ModuleDescriptor out{a.ring, a.rank + b.rank, {}};
    std::vector<Integer> t = a.torsion;
    t.insert(t.end(), b.torsion.begin(), b.torsion.end());
    if (t.empty()) return out;
    if (a.ring.kind() != RingKind::Integers) {
        std::sort(t.begin(), t.end());
        out.torsion = std::move(t);
        return out;
    }
    // invariant factors of the combined torsion part
    IntMat diag = int_zero(t.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) diag(i, i) = t[i];
    out.torsion = cokernel_descriptor(a.ring, diag).torsion;
    return out;
}

SolveResult solve_columns(const Ring& ring, const IntMat& a, const IntMat& b) {
    require(ring.kind() != RingKind::Rationals, ErrorKind::UnsupportedRing, "solve_columns: use dense routines over Q");
    require(a.rows() == b.rows(), ErrorKind::Internal, "solve_columns: row mismatch");
    SolveResult out;
    const bool modular = ring.is_modular();
    IntSmith s = modular ? smith_modular(a, ring.prime(), ring.precision(), true) : smith_integers(a, true);
    IntMat y = int_multiply(s.u, b);
    if (modular) y = reduce_entries(ring, std::move(y));
    IntMat z = int_zero(a.cols(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const Integer& yi = y(i, c);
            if (i >= s.rank) {
                if (yi != 0) return out;
                continue;
            }
            const Integer& di = s.diagonal[i];
            if (yi % di != 0) return out;
            z(i, c) = yi / di;
        }
    }
    out.x = int_multiply(s.v, z);
    if (modular) out.x = reduce_entries(ring, std::move(out.x));
    out.ok = true;
    return out;
}

bool column_span_contains(const Ring& ring, const IntMat& a, const IntMat& b) {
    if (b.cols() == 0) return true;
    if (ring.kind() == RingKind::Rationals) return rational_rank(hstack(a, b)) == rational_rank(a);
    return solve_columns(ring, a, b).ok;
}

IntMat kernel_generators(const Ring& ring, const IntMat& m) {
    require(ring.kind() != RingKind::Rationals, ErrorKind::UnsupportedRing, "kernel_generators: not over Q");
    const bool modular = ring.is_modular();
    IntSmith s = modular ? smith_modular(m, ring.prime(), ring.precision(), true) : smith_integers(m, true);
    std::vector<DenseVec<Integer>> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Integer scale = 1;
        if (j < s.rank) {
            if (!modular) continue;
            int a = valuation_of(s.diagonal[j], ring.prime());
            if (a == 0) continue;
            scale = power(ring.prime(), ring.precision() - a);
        }
        DenseVec<Integer> c = s.v.column(j);
        for (auto& x : c) {
            x *= scale;
            if (modular) {
                x %= ring.modulus();
                if (x < 0) x += ring.modulus();
            }
        }
        cols.push_back(std::move(c));
    }
    IntMat out = int_zero(m.cols(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) out(i, j) = cols[j][i];
    return out;
}

ModuleDescriptor subquotient(const Ring& ring, const IntMat& a, const IntMat& b) {
    const std::size_t n = a.cols() ? a.rows() : b.rows();
    if (ring.kind() == RingKind::Rationals) {
        std::size_t ra = rational_rank(a);
        require(b.cols() == 0 || rational_rank(hstack(a, b)) == ra, ErrorKind::Internal,
                "subquotient: B is not contained in A");
        return ModuleDescriptor::vector_space(ring, ra - (b.cols() ? rational_rank(b) : 0));
    }
    IntMat la = a, lb = b;
    if (ring.is_modular()) {
        // Work with the preimage lattices in Z^n.
        IntMat pk = int_identity(n);
        for (std::size_t i = 0; i < n; ++i) pk(i, i) = ring.modulus();
        la = a.cols() ? hstack(a, pk) : pk;
        lb = b.cols() ? hstack(b, pk) : pk;
    }
    if (la.cols() == 0) return ModuleDescriptor{ring, 0, {}};
    auto s = smith_integers(la, true);
    const std::size_t t = s.rank;
    IntMat y = int_multiply(s.u, lb.cols() ? lb : int_zero(n, 0));
    IntMat x = int_zero(t, lb.cols());
    for (std::size_t c = 0; c < lb.cols(); ++c)
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= t) {
                require(y(i, c) == 0, ErrorKind::Internal, "subquotient: B is not contained in A");
                continue;
            }
            require(y(i, c) % s.diagonal[i] == 0, ErrorKind::Internal, "subquotient: B is not contained in A");
            x(i, c) = y(i, c) / s.diagonal[i];
        }
    auto s2 = smith_integers(x, false);
    return from_divisors(ring, t - s2.rank, s2.diagonal);
}

IntMat preimage_generators(const Ring& ring, const IntMat& m, const IntMat& rel) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) return int_identity(n);
    if (n == 0) return int_zero(0, 0);
    IntMat full = rel.cols() ? hstack(m, rel) : m;
    IntMat k = kernel_generators(ring, full);
    IntMat out = int_zero(n, k.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) out(i, j) = k(i, j);
    return out;
}

ModuleDescriptor presented_homology(const Ring& ring, const IntMat& in, const Presentation& mid, const IntMat& out,
                                    const Presentation& dst) {
    if (mid.gens == 0) return ModuleDescriptor{ring, 0, {}};
    IntMat cycles = dst.gens ? preimage_generators(ring, out, dst.relations) : int_identity(mid.gens);
    IntMat bounds = in.cols() ? (mid.relations.cols() ? hstack(in, mid.relations) : in) : mid.relations;
    if (bounds.rows() != mid.gens) bounds = int_zero(mid.gens, 0);
    if (cycles.cols() == 0) cycles = int_zero(mid.gens, 0);
    return subquotient(ring, cycles, bounds);
}

}  // namespace cyclotome
