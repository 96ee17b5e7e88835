#pragma once

// Graded de Rham complex of Z/p^k[x_1..x_m] with a Frobenius lift. The
// internal degree of x^e dx_S is |e| + |S|. A lift sending each x_t to a
// homogeneous polynomial of degree p maps degree d to degree p d.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cyclotome/linalg/module.hpp"

namespace cyclotome {

using Monomial = std::vector<int>;
using Polynomial = std::map<Monomial, Integer>;

// x^e dx_S with S a bitmask over the variables
struct FormTerm {
    Monomial exps;
    unsigned mask = 0;
    friend auto operator<=>(const FormTerm&, const FormTerm&) = default;
};

// Basis of q-forms of internal degree d in m variables, in a fixed order.
std::vector<FormTerm> form_basis(int variables, int q, int d);

struct DeRhamData {
    std::uint32_t p = 2;
    int k = 2;
    int variables = 1;
    int window = 4;                 // internal degrees 0..window
    std::vector<Polynomial> lift;   // image of x_t; empty means x_t^p
};

struct DeRhamFDM {
    DeRhamData data;
    // H^q in internal degree d over Z/p^k, keyed (q, d)
    std::map<std::pair<int, int>, ModuleDescriptor> cohomology;
    // Fr^* / p^q on q-forms of degree d, into q-forms of degree p d (integer entries), for p d <= window
    std::map<std::pair<int, int>, IntMat> phi;
    bool divisible = true;  // every entry of Fr^* on q-forms has valuation >= q
    std::map<int, int> min_valuation;  // per form degree q, over nonzero entries
};

// Throws a Validation error if a lift does not reduce to x_t^p mod p or is not
// homogeneous of degree p.
DeRhamFDM de_rham_fdm(const DeRhamData& d);

struct CartierEntry {
    int q = 0;
    int d = 0;
    std::size_t source = 0;  // dim of q-forms in degree d over F_p
    std::size_t target = 0;  // dim H^q in degree p d over F_p
    std::size_t rank = 0;    // rank of forms -> H^q
    bool closed = true;      // images are cocycles mod p
    bool ok() const { return closed && rank == source && target == source; }
};

struct CartierModPReport {
    std::vector<CartierEntry> entries;
    // H^q_e over F_p vanishes for degrees e <= window not divisible by p
    bool off_multiples_vanish = true;
    bool inconclusive = false;  // window < p, so no positive degree is compared
    bool ok() const;
};

CartierModPReport cartier_mod_p_check(const DeRhamData& d);

}  // namespace cyclotome
