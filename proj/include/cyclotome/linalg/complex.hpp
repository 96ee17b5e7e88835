#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "cyclotome/linalg/module.hpp"
#include "cyclotome/linalg/sparse.hpp"

namespace cyclotome {

// Homologically graded complex C_lo ... C_hi with d_n : C_n -> C_{n-1}.
struct ChainComplex {
    Ring ring;
    int lo = 0;
    std::vector<std::size_t> dims;      // dims[n - lo]
    std::vector<SparseMatrix> diffs;    // diffs[n - lo - 1] = d_n for lo < n <= hi
    bool closed_below = true;           // C_{lo-1} is genuinely zero
    bool closed_above = false;          // C_{hi+1} is genuinely zero
    std::vector<std::vector<int>> internal_degree;  // optional, per degree then per basis vector

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    std::size_t dim(int n) const {
        return (n < lo || n > hi()) ? 0 : dims[static_cast<std::size_t>(n - lo)];
    }
    // d_n; an empty matrix of the right shape outside the stored range.
    SparseMatrix d(int n) const;
    bool graded() const { return !internal_degree.empty(); }
};

struct HomologyGroup {
    int degree = 0;
    ModuleDescriptor module;
    bool boundary_unreliable = false;
};

// Throws ErrorKind::Invariant naming the first degree with d_{n-1} d_n != 0.
void validate_complex(const ChainComplex& c);

std::vector<HomologyGroup> homology_of_complex(const ChainComplex& c);

// Field coefficients only: H_n split by internal degree (n -> weight -> dim).
std::map<int, std::map<int, std::size_t>> graded_homology(const ChainComplex& c);

// Matrix helpers over a ring.
SparseMatrix ring_multiply(const Ring& ring, const SparseMatrix& a, const SparseMatrix& b);
bool ring_is_zero(const Ring& ring, const SparseMatrix& m);

struct RankKernelImage {
    std::size_t rank = 0;
    std::vector<std::vector<Scalar>> kernel;  // RREF rows
    std::vector<std::vector<Scalar>> image;   // RREF rows
};

RankKernelImage rank_kernel_image(const SparseMatrix& m, const Ring& ring);

}  // namespace cyclotome
