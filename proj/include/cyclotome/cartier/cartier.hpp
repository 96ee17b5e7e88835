#pragma once

// Quasi-Frobenius maps, twisted sectors of smash products and the
// non-commutative Cartier comparison for algebras over F_p.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclotome/algebra/algebra.hpp"
#include "cyclotome/cyclic/homology.hpp"

namespace cyclotome {

// Phi : A -> A^{(x)p}, columns = images of the basis of A.
struct QuasiFrobenius {
    std::uint32_t p = 0;
    Algebra source;
    Algebra target;  // cyclic_tensor_power(source, p)
    SparseMatrix phi;
};

QuasiFrobenius diagonal_quasi_frobenius(const GroupTable& g, std::uint32_t p);
// Same source and target with a caller-supplied matrix.
QuasiFrobenius quasi_frobenius_from(const Algebra& a, std::uint32_t p, SparseMatrix phi);

struct QuasiFrobeniusReport {
    bool algebra_map = true;
    bool equivariant = true;
    bool tate = true;  // induced map on Tate cohomology is e -> e^{(x)p} in every window degree
    std::vector<std::string> failures;
    bool ok() const { return algebra_map && equivariant && tate; }
};

QuasiFrobeniusReport quasi_frobenius_validate(const QuasiFrobenius& q, int window = 4);

struct SectorReport {
    std::string algebra;
    int classes = 0;
    std::size_t cells = 0;          // chain basis vectors inspected
    bool partition = true;          // every chain lies in exactly one sector
    bool stable = true;             // b, t and B keep each sector
    bool sums_match = true;         // sector HH sums equal an unsplit computation
    HomologyTable hh;               // per-sector keys (-1, class)
    HomologyTable hc;
    HomologyTable hp;
};

// Sectors of B#G for the action carried by B.
SectorReport twisted_sectors(const Algebra& b, int N);

enum class Verdict { Agree, Disagree, Inconclusive };
std::string verdict_name(Verdict v);

struct SectorIsoCheck {
    std::string name;
    std::array<std::size_t, 2> lhs{};
    std::array<std::size_t, 2> rhs{};
    bool lhs_reliable = false;
    bool rhs_reliable = false;
    Verdict verdict = Verdict::Inconclusive;
    std::string note;
};

// Sigma-sector comparisons for B over F_p with the trivial Z/p-action:
// HP(B#Z/p)_sigma against the tilde of the Hodge-filtered HP(B), and
// HP(B^{(x)p}#Z/p)_sigma against HP(B).
std::vector<SectorIsoCheck> sector_iso_checks(const Algebra& b, int N);

struct CartierDimReport {
    std::string algebra;
    std::uint32_t p = 0;
    int N = 0;
    bool smooth_flag = false;
    bool lift_ok = false;                 // W2-lift witness reduces to A
    bool cohomology_vanishes = false;     // HH^i = 0 on [2p-1, max(N, 2p)]
    std::vector<std::size_t> hh;          // HH_0..HH_N
    std::array<std::size_t, 2> hh_pattern{};
    std::array<std::size_t, 2> hp{};
    bool hp_reliable = false;
    bool window_ok = false;               // HH_{N-1} = HH_N = 0, so the pattern is complete
    bool patterns_equal = false;
    std::vector<std::string> notes;
    bool applicable() const { return smooth_flag && lift_ok && cohomology_vanishes; }
    bool passes() const { return applicable() && hp_reliable && window_ok && patterns_equal; }
};

CartierDimReport cartier_dim_check(const Algebra& a, int N);

struct CartierMapReport {
    std::uint32_t p = 0;
    std::size_t hh0 = 0;
    std::size_t rank = 0;                  // of the degree-0 map on HH_0
    bool well_defined = true;              // commutators go to commutators
    std::array<std::size_t, 2> hp{};
    bool hp_reliable = false;
    bool transported = false;              // HP_0 = HC_0 = HH_0, so the degree-0 map lands in HP_0
    bool higher_vanish = false;            // HH_q = 0 for 0 < q <= N
    std::vector<std::vector<long>> matrix; // degree-0 map in the basis of A, mod p
    std::vector<std::string> notes;
    bool complete() const { return transported && higher_vanish; }
    bool bijective() const { return complete() && well_defined && rank == hh0 && hp[0] == hh0 && hp[1] == 0; }
};

// Degree-0 chain-level map a -> a^{(x)p} via Phi -> twisted trace -> x1 x2 .. xp.
CartierMapReport cartier_map_explicit(const QuasiFrobenius& q, int N);

}  // namespace cyclotome
