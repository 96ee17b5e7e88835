#pragma once

// Filtered Dieudonne modules over W = Z_p, computed at finite precision
// (base Z/p^k) or over Z with a declared prime. The residue field is F_p, so
// every Frobenius-semilinear map is stored as a plain matrix.
//
// M = R^dim / relations. The filtration F^a = M ⊇ ... ⊇ F^b = 0 is given by
// generating columns of each step a..b-1, and phi_i by the images in R^dim of
// the generators of F^i. For j < a, F^j = M and phi_j = p^(a-j) phi_a.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cyclotome/linalg/module.hpp"

namespace cyclotome {

struct FDM {
    Ring base;
    std::uint32_t p = 0;
    std::size_t dim = 0;
    IntMat relations;                // dim x r
    int a = 0;                       // F^a = M
    int b = 1;                       // F^b = 0
    std::vector<IntMat> filtration;  // generators of F^i, i = a..b-1
    std::vector<IntMat> phi;         // phi_i on those generators, i = a..b-1

    const IntMat& step(int i) const { return filtration[static_cast<std::size_t>(i - a)]; }
    const IntMat& phi_at(int i) const { return phi[static_cast<std::size_t>(i - a)]; }
    Presentation module() const { return {dim, relations}; }
};

// Checks shapes and the base ring; throws a Validation error on malformed input.
void check_well_formed(const FDM& m);

// Rank-one Tate object: F^i = M = R, F^{i+1} = 0, phi_i = id.
FDM tate_object(const Ring& base, std::uint32_t p, int i);
FDM direct_sum(const FDM& x, const FDM& y);

struct FDMValidation {
    bool well_defined = true;  // each phi_i kills the relations among the generators of F^i
    bool nested = true;        // F^{i+1} inside F^i
    bool axiom_i = true;       // phi_i on F^{i+1} equals p phi_{i+1}
    bool axiom_ii = true;      // the images of the phi_i generate M
    std::vector<std::string> failures;
    bool ok() const { return well_defined && nested && axiom_i && axiom_ii; }
};

FDMValidation fdm_validate(const FDM& m);

struct TildeResult {
    ModuleDescriptor tilde;   // coker(t - p) on the finite slot model
    bool has_phi = false;     // phi-tilde well defined (axiom (i) held)
    bool surjective = false;
    bool injective = false;
    bool iso() const { return has_phi && surjective && injective; }
};

TildeResult fdm_tilde(const FDM& m);

FDM fdm_tensor(const FDM& x, const FDM& y);
FDM tate_twist(const FDM& m, int n);

// Isomorphism invariants used to compare FDMs built in different ways.
struct FDMDescriptor {
    int a = 0;
    int b = 0;
    ModuleDescriptor module;
    std::vector<ModuleDescriptor> steps;   // F^i, i = a..b-1
    std::vector<ModuleDescriptor> graded;  // F^i / F^{i+1}
    std::vector<ModuleDescriptor> images;  // phi_i(F^i)
    friend bool operator==(const FDMDescriptor&, const FDMDescriptor&) = default;
};

FDMDescriptor describe(const FDM& m);

// A cochain complex of FDMs in degrees 0..terms-1; d[q] : M^q -> M^{q+1} as a
// matrix on the free covers, compatible with filtrations and every phi_i.
struct FDMComplex {
    std::vector<FDM> terms;
    std::vector<IntMat> d;
};

struct SyntomicResult {
    int j = 0;
    std::vector<ModuleDescriptor> h;  // H^0 .. H^{terms}
};

// Cohomology of the fibre of id - phi_j : F^j M -> M.
SyntomicResult syntomic_cohomology(const FDMComplex& c, int j);
SyntomicResult syntomic_cohomology(const FDM& m, int j);

// Random filtered F_p-module of dimension <= max_dim with phi_i satisfying
// axiom (i); surjectivity of the phi_i is left to chance.
FDM random_torsion_fdm(std::mt19937& rng, std::uint32_t p, std::size_t max_dim);

// Generators of F^j with the phi_j images, extended outside [a, b).
struct FilteredPiece {
    IntMat gens;
    IntMat phi;
};
FilteredPiece filtered_piece(const FDM& m, int j);

}  // namespace cyclotome
