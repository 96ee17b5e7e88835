#pragma once

#include <cstddef>
#include <vector>

#include "cyclotome/linalg/dense.hpp"
#include "cyclotome/linalg/ring.hpp"
#include "cyclotome/linalg/sparse.hpp"

namespace cyclotome {

using IntMat = DenseMat<Integer>;

IntMat int_zero(std::size_t rows, std::size_t cols);
IntMat int_identity(std::size_t n);
IntMat int_multiply(const IntMat& a, const IntMat& b);
IntMat to_int_matrix(const SparseMatrix& m);

// U * M * V = D. With `track` false only `diagonal` and `rank` are filled.
// `u_inverse` is U^{-1}.
struct IntSmith {
    IntMat d;
    IntMat u;
    IntMat u_inverse;
    IntMat v;
    std::vector<Integer> diagonal;  // the first `rank` diagonal entries, all nonzero
    std::size_t rank = 0;
};

// Over Z: diagonal entries positive, d_1 | d_2 | ...
IntSmith smith_integers(IntMat m, bool track);
// Over Z/p^k (entries read mod p^k): diagonal entries are p^{a_i} with a_i < k
// ascending; entries congruent to zero are not counted in rank.
IntSmith smith_modular(IntMat m, std::uint32_t p, int k, bool track);

struct SmithResult {
    SparseMatrix d;
    SparseMatrix u;
    SparseMatrix v;
    std::vector<Scalar> diagonal;
};

// Public entry point; ring must be Z or Z/p^k (a prime field is accepted as Z/p^1).
SmithResult smith_normal_form(const SparseMatrix& m, const Ring& ring);

}  // namespace cyclotome
