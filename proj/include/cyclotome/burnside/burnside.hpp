#pragma once

// Burnside category of a finite group at the level of isomorphism classes:
// spans of G-sets composed by fibre product, tables of marks and Mackey
// functor validation. Subgroups are bitmasks over the element indices.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cyclotome/algebra/group.hpp"
#include "cyclotome/linalg/ring.hpp"
#include "cyclotome/linalg/smith.hpp"

namespace cyclotome {

using SubgroupMask = std::uint32_t;

inline constexpr int default_group_bound = 24;

int mask_order(SubgroupMask h);
bool mask_contains(SubgroupMask h, int g);
SubgroupMask conjugate(const GroupTable& g, SubgroupMask h, int x);  // x h x^-1

struct SubgroupLattice {
    GroupTable group;
    std::vector<SubgroupMask> subgroups;            // ascending order, then mask
    std::vector<std::vector<std::size_t>> classes;  // indices into subgroups; representative first
    std::vector<std::size_t> class_of;              // per subgroup
    std::vector<std::vector<bool>> below;           // below[i][j]: class i subconjugate to class j

    std::size_t class_count() const { return classes.size(); }
    SubgroupMask rep(std::size_t c) const { return subgroups[classes[c].front()]; }
    std::size_t class_index(SubgroupMask h) const;
    std::string class_name(std::size_t c) const;
};

SubgroupLattice subgroup_classes(const GroupTable& g, int bound = default_group_bound);

// Finite G-set as an action table act[g][x].
struct GSet {
    std::size_t size = 0;
    std::vector<std::vector<int>> act;

    friend bool operator==(const GSet&, const GSet&) = default;
};

SubgroupMask stabilizer(const GSet& x, int point);
std::vector<std::vector<int>> orbits(const GSet& x);

// G/H with point 0 = eH; cosets ordered by their smallest element.
struct Orbit {
    SubgroupMask subgroup = 0;
    GSet set;
    std::vector<int> coset_rep;  // smallest element of each coset
    std::vector<int> coset_of;   // per group element
};

Orbit orbit(const GroupTable& g, SubgroupMask h);
GSet point_set(const GroupTable& g);
GSet disjoint_union(const GSet& x, const GSet& y);
// Sum of G/H over (class, multiplicity) pairs.
GSet gset_from_orbits(const SubgroupLattice& l, const std::vector<std::pair<std::size_t, std::size_t>>& parts);

struct Span {
    GSet source;
    GSet target;
    GSet middle;
    std::vector<int> left;   // middle -> source
    std::vector<int> right;  // middle -> target
};

// Throws a Validation error unless both legs are equivariant.
void check_span(const GroupTable& g, const Span& s);

Span identity_span(const GSet& x);
// s1 : X -> Y, s2 : Y -> Z; the middle is S1 x_Y S2.
Span span_compose(const GroupTable& g, const Span& s1, const Span& s2);

// Iso class of a span with transitive middle: the orbit in X x Y it covers,
// named by its smallest point, and the stabiliser of a middle point over
// that point, taken up to conjugation in the stabiliser of the point.
struct SpanClass {
    std::size_t point = 0;  // x * |Y| + y
    SubgroupMask middle = 0;
    auto operator<=>(const SpanClass&) const = default;
};

struct BurnsideHomElement {
    std::map<SpanClass, std::int64_t> terms;  // nonzero coefficients only

    void add(const SpanClass& c, std::int64_t k);
    BurnsideHomElement& operator+=(const BurnsideHomElement& o);
    friend bool operator==(const BurnsideHomElement&, const BurnsideHomElement&) = default;
};

BurnsideHomElement classify(const GroupTable& g, const Span& s);
Span realize(const GroupTable& g, const GSet& x, const GSet& y, const SpanClass& c);
// Bilinear extension of span_compose; a : X -> Y, b : Y -> Z.
BurnsideHomElement compose(const GroupTable& g, const GSet& x, const GSet& y, const GSet& z, const BurnsideHomElement& a,
                           const BurnsideHomElement& b);

std::vector<SpanClass> hom_basis(const GroupTable& g, const GSet& x, const GSet& y);
// Basis of Hom(G/H1, G/H2) for class representatives.
std::vector<SpanClass> burnside_hom_basis(const SubgroupLattice& l, std::size_t h1, std::size_t h2);

// marks[k][h] = |(G/K)^H| over class representatives, lower triangular.
std::vector<std::vector<std::int64_t>> table_of_marks(const SubgroupLattice& l);
std::vector<std::int64_t> marks(const SubgroupLattice& l, const GSet& x);

// Equivariant map G/L -> G/H between representative orbits, eL -> point.
struct OrbitMap {
    std::size_t from = 0;
    std::size_t to = 0;
    int point = 0;
    auto operator<=>(const OrbitMap&) const = default;
};

std::vector<OrbitMap> orbit_maps(const SubgroupLattice& l);
std::string describe(const SubgroupLattice& l, const OrbitMap& f);

// Additive functor on the Burnside category: M(G/H) is free of rank[H] over
// `ring`; restriction[i] : M(G/H) -> M(G/L) and transfer[i] : M(G/L) -> M(G/H)
// are the images of the spans G/H <- G/L = G/L and G/L = G/L -> G/H for
// f = orbit_maps(l)[i].
struct MackeyFunctor {
    Ring ring = Ring::integers();
    std::vector<std::size_t> rank;
    std::vector<IntMat> restriction;
    std::vector<IntMat> transfer;
};

// M(Y) = Hom(X, Y), spans acting by composition.
MackeyFunctor represented_mackey(const SubgroupLattice& l, const GSet& x);
// The Burnside ring functor, H -> A(H) = Hom(pt, G/H).
MackeyFunctor burnside_ring_mackey(const SubgroupLattice& l);
// H -> V^H for a representation given by one matrix per group element.
MackeyFunctor fixed_point_mackey(const SubgroupLattice& l, const Ring& ring, const std::vector<IntMat>& rho);

struct MackeyReport {
    std::size_t generators = 0;
    std::size_t relations_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Every composable word of generating spans up to word_length is reduced to
// normal form by span composition; the matching matrix identity is checked.
MackeyReport mackey_validate(const SubgroupLattice& l, const MackeyFunctor& m, int word_length = 3);

}  // namespace cyclotome
