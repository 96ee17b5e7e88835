#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cyclotome/linalg/ring.hpp"
#include "cyclotome/linalg/smith.hpp"

namespace cyclotome {

// Isomorphism type of a finitely generated module. Over a field only `rank`
// is used. Over Z/p^k, free summands (Z/p^k) count towards `rank` and the
// torsion list holds the proper powers p^a, 0 < a < k.
struct ModuleDescriptor {
    Ring ring;
    std::size_t rank = 0;
    std::vector<Integer> torsion;  // ascending divisibility chain, non-units

    static ModuleDescriptor vector_space(const Ring& r, std::size_t dim) { return {r, dim, {}}; }

    bool is_zero() const { return rank == 0 && torsion.empty(); }
    // log_p of the order, for modules over Z/p^k
    std::size_t length() const;
    std::string str() const;

    friend bool operator==(const ModuleDescriptor& a, const ModuleDescriptor& b) {
        return a.ring == b.ring && a.rank == b.rank && a.torsion == b.torsion;
    }
    friend bool operator!=(const ModuleDescriptor& a, const ModuleDescriptor& b) { return !(a == b); }
};

ModuleDescriptor direct_sum(const ModuleDescriptor& a, const ModuleDescriptor& b);

// Descriptor of R^n / span(columns of relations).
ModuleDescriptor cokernel_descriptor(const Ring& ring, const IntMat& relations);

// A/B for B ⊆ A ⊆ R^n, both given by generating columns (R = Z, Z/p^k or a
// prime field; entries are integers). Throws if B ⊄ A.
ModuleDescriptor subquotient(const Ring& ring, const IntMat& a, const IntMat& b);

// Generating columns of ker m over R = Z or Z/p^k (or a prime field).
IntMat kernel_generators(const Ring& ring, const IntMat& m);

// True if every column of b lies in the span of the columns of a.
bool column_span_contains(const Ring& ring, const IntMat& a, const IntMat& b);

// Solves a*x = b column by column over R; returns nullopt-like empty matrix
// with ok=false if some column is not in the span.
struct SolveResult {
    bool ok = false;
    IntMat x;
};
SolveResult solve_columns(const Ring& ring, const IntMat& a, const IntMat& b);

// R^gens modulo the span of the relation columns.
struct Presentation {
    std::size_t gens = 0;
    IntMat relations;

    static Presentation free(std::size_t n) { return {n, IntMat(n, 0, Integer(0))}; }
};

// Homology at `mid` of  . --in--> mid --out--> dst, both maps given on generators
// (R = Z or Z/p^k). `in` may have zero columns, `dst` zero generators.
ModuleDescriptor presented_homology(const Ring& ring, const IntMat& in, const Presentation& mid, const IntMat& out,
                                    const Presentation& dst);

// {x in R^gens : m x lies in the span of rel}, as generating columns.
IntMat preimage_generators(const Ring& ring, const IntMat& m, const IntMat& rel);

IntMat hstack(const IntMat& a, const IntMat& b);
IntMat reduce_entries(const Ring& ring, IntMat m);

}  // namespace cyclotome
