#pragma once

// Tate cohomology of Z/n from the 2-periodic resolution, and the comparison
// between V and its p-th tensor power with the cyclic rotation.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cyclotome/linalg/module.hpp"

namespace cyclotome {

// R^dim with a generator sigma of Z/n acting by the matrix `sigma`.
struct CyclicModule {
    Ring ring;
    int n = 2;
    IntMat sigma;
    std::size_t dim() const { return sigma.rows(); }
};

CyclicModule trivial_module(const Ring& ring, int n, std::size_t dim);
// R[Z/n] with sigma the regular shift.
CyclicModule regular_module(const Ring& ring, int n);

// Cochains: every degree is V, d^i = sigma - 1 for even i and N for odd i,
// so H^0 = V^G / N V and H^1 = ker N / (sigma - 1) V.
IntMat tate_differential(const CyclicModule& v, int degree);

struct TateTable {
    int lo = 0;
    int hi = 0;
    std::map<int, ModuleDescriptor> groups;
    bool periodic = true;  // H^{i+2} = H^i on the window
};

TateTable tate_cyclic(const CyclicModule& v, int lo, int hi);

// Classes of `vectors` (columns) in Tate degree i: whether each column is a
// cocycle and the rank of their span modulo coboundaries.
struct ClassRank {
    bool cocycles = true;
    std::size_t rank = 0;
};
ClassRank tate_class_rank(const CyclicModule& v, int degree, const IntMat& vectors);

// True if every column of x is a coboundary in Tate degree i.
bool tate_coboundaries(const CyclicModule& v, int degree, const IntMat& x);

// V^{(x)p} with sigma(v1..vp) = (vp, v1, .., v(p-1)); basis index = base-dim digits.
CyclicModule tensor_power_rotation(const Ring& ring, std::size_t dim, int p, std::size_t max_dim = 1u << 14);

// Column of e_i^{(x)p} in the tensor power basis.
std::size_t diagonal_index(std::size_t dim, int p, std::size_t i);

struct TateComparisonDegree {
    int degree = 0;
    std::size_t source = 0;
    std::size_t target = 0;
    ClassRank image;  // of the diagonal vectors e_i^{(x)p}
    bool additive = true;  // (x + y)^{(x)p} - x^{(x)p} - y^{(x)p} is a coboundary on basis pairs
    bool iso() const { return image.cocycles && source == target && image.rank == source && additive; }
};

struct TateComparison {
    std::uint32_t p = 0;
    std::size_t dim = 0;
    std::vector<TateComparisonDegree> degrees;
    bool ok() const;
};

// V = F_p^dim with trivial action against V^{(x)p} with the rotation.
TateComparison tt_le_check(std::uint32_t p, std::size_t dim, int lo = 0, int hi = 3);

}  // namespace cyclotome
