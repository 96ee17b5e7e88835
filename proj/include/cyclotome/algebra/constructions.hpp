#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cyclotome/algebra/algebra.hpp"

namespace cyclotome {

Algebra ground_ring(const Ring& ring);

// Basis = group elements, action by conjugation, group-graded by the elements.
Algebra group_algebra(const GroupTable& group, const Ring& ring);

struct Quiver {
    int vertices = 1;
    std::vector<std::pair<int, int>> arrows;  // (source, target), 0-based
    std::vector<std::string> arrow_names;     // optional
};

// Paths compose left to right: p*q is p followed by q. Graded by length.
Algebra path_algebra(const Quiver& quiver, const Ring& ring);

Algebra matrix_algebra(const Algebra& a, int n);

// Tensor power with the cyclic group acting by sigma(a1..ap) = +-(ap, a1, .., a(p-1)).
Algebra cyclic_tensor_power(const Algebra& a, int p, std::size_t max_dim);

// B#G for the action carried by B; group-graded by the group component.
Algebra smash_product(const Algebra& b);

Algebra direct_product(const Algebra& a, const Algebra& b);

// k[x1..xv] modulo monomials of degree > max_degree, graded by degree.
Algebra truncated_polynomials(const Ring& ring, int variables, int max_degree);

// span(1, x, y), |x| = 0, |y| = 1, dy = x, all products of x, y zero.
Algebra dg_smoke_algebra(const Ring& ring);

Algebra with_trivial_action(Algebra a, const GroupTable& group);

bool is_commutative(const Algebra& a);

// Over a field.
std::size_t center_dimension(const Algebra& a);

}  // namespace cyclotome
