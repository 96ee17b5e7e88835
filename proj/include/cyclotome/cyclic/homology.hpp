#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cyclotome/algebra/algebra.hpp"
#include "cyclotome/cyclic/chains.hpp"
#include "cyclotome/cyclic/total.hpp"
#include "cyclotome/linalg/complex.hpp"
#include "cyclotome/linalg/module.hpp"

namespace cyclotome {

struct EngineOptions {
    ChainOptions chains;
    Route route = Route::Mixed;
};

// weight / sector = -1 means summed over all values.
struct HomologyKey {
    std::string theory;
    int degree = 0;
    int weight = -1;
    int sector = -1;
    friend auto operator<=>(const HomologyKey&, const HomologyKey&) = default;
};

struct HomologyTable {
    Ring ring;
    std::map<HomologyKey, ModuleDescriptor> groups;
    std::set<HomologyKey> unreliable;
    std::vector<std::string> notes;

    bool has(const HomologyKey& k) const { return groups.count(k) != 0; }
    // Rank (vector-space dimension over a field); 0 when absent.
    std::size_t dim(const std::string& theory, int degree, int weight = -1, int sector = -1) const;
    std::vector<std::size_t> dims(const std::string& theory, int lo, int hi, int weight = -1, int sector = -1) const;
    void set(const HomologyKey& k, ModuleDescriptor m) { groups.insert_or_assign(k, std::move(m)); }
    void merge(const HomologyTable& other);
};

// Splits evaluated for an algebra: internal degrees (graded, non-DG) times
// conjugacy classes (group-graded). `max_q` bounds the tuple length.
std::vector<Split> chain_splits(const Algebra& a, int max_q);

// True when totals over all internal degrees are finite and meaningful.
bool totals_meaningful(const Algebra& a);

// Hochschild complex in degrees 0..N+1 (DG: total degree q + internal degree).
ChainComplex hochschild_complex(const Algebra& a, int N, const ChainOptions& opt = {}, Split split = {});

// HH_n for n <= N. Fields use ranks; Z and Z/p^k go through Smith normal form.
HomologyTable hochschild_homology(const Algebra& a, int N, const EngineOptions& opt = {});

// HH^n for n <= N through normalized cochains; ungraded algebras only.
HomologyTable hochschild_cohomology(const Algebra& a, int N);

struct IdentityCheck {
    std::string name;
    int q = 0;
    Split split;
    bool ok = true;
};

struct BicomplexReport {
    std::vector<IdentityCheck> checks;
    std::size_t cells = 0;
    std::size_t largest_cell = 0;
    bool ok() const;
};

// b^2 = 0, b'^2 = 0, (1-t)b' = b(1-t), b'N = Nb, t^{q+1} = 1 (and the DG
// compatibilities) on the unnormalized chain spaces C_0..C_N.
BicomplexReport bicomplex_identities(const Algebra& a, int N, const ChainOptions& opt = {});

struct ConnesNode {
    int degree = 0;    // the n in HH_n -> HC_n -> HC_{n-2} -> HH_{n-1}
    std::string node;  // "HC_n", "HC_{n-2}" or "HH_{n-1}"
    Split split;
    std::size_t kernel = 0;  // dim ker of the outgoing map
    std::size_t image = 0;   // rank of the incoming map
    bool ok() const { return kernel == image; }
};

struct ConnesReport {
    std::vector<ConnesNode> nodes;
    bool exact() const;
};

struct SMapRank {
    int degree = 0;  // S: HC_degree -> HC_{degree-2}
    Split split;
    std::size_t rank = 0;
    std::size_t source = 0;
    std::size_t target = 0;
    bool iso() const { return rank == source && rank == target; }
};

struct CyclicResult {
    HomologyTable table;  // theories "HH" and "HC"
    std::vector<SMapRank> s_maps;
    ConnesReport connes;
};

CyclicResult cyclic_homology(const Algebra& a, int N, const EngineOptions& opt = {});

struct StabilizationCertificate {
    int parity = 0;
    Split split;
    bool stabilized = false;
    int degree = -1;      // HC degree whose stable image is reported
    int iterations = -1;  // number of S applications at which the image stopped shrinking
    std::size_t value = 0;
};

struct PeriodicResult {
    HomologyTable table;  // theory "HP", degrees 0 and 1
    std::vector<StabilizationCertificate> certificates;
    bool stabilized() const;
};

PeriodicResult periodic_cyclic(const Algebra& a, int N, const EngineOptions& opt = {});

struct NegativeResult {
    HomologyTable table;  // theory "HC-", degrees lo..N, unreliable entries flagged
    int column_window = 0;
    bool sequence_ok = true;  // 0 -> CC^- -> CP -> CC[-2] -> 0 verified cell-wise
    int lo = 0;
};

NegativeResult negative_cyclic(const Algebra& a, int N, int C, const EngineOptions& opt = {});

}  // namespace cyclotome
