#pragma once

// Column filtration on the periodic complex and its spectral sequence.
//
// The periodic complex is windowed to columns >= -C of the normalized mixed
// bicomplex. A cell in column c has filtration weight p = -c, so F^p is the
// span of the columns <= -p; the horizontal map B lowers the column and
// therefore raises the weight. E_r^{p,n} is indexed by weight p and total
// degree n, and E_1^{p,n} is the Hochschild homology HH_{n+2p} of column -p.
// d_r : E_r^{p,n} -> E_r^{p+r,n-1}. Entries are exact for p + r + 1 <= C.

#include <array>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "cyclotome/cyclic/homology.hpp"

namespace cyclotome {

struct FiltrationReport {
    int N = 0;
    int C = 0;
    std::size_t cells = 0;
    bool preserves_filtration = true;  // d(F^p) inside F^p in every degree of the window
    bool shift_bijective = true;       // u carries F^0 onto F^1 blockwise
    bool shift_chain_map = true;
    bool ok() const { return preserves_filtration && shift_bijective && shift_chain_map; }
};

FiltrationReport hodge_filtration(const Algebra& a, int N, int C, const EngineOptions& opt = {});

struct PageEntry {
    int r = 0;
    int p = 0;
    int n = 0;
    std::size_t dim = 0;
    std::size_t d_rank = 0;  // rank of d_r leaving this entry
};

struct SpectralPages {
    int N = 0;
    int C = 0;
    int r_max = 0;
    int p_max = 0;  // weights 0..p_max are reported
    // (r, p, n) summed over splits, for r = 1..r_max + 1 (the last page has no differential)
    std::map<std::tuple<int, int, int>, PageEntry> entries;
    bool transitions_ok = true;  // E_{r+1} equals the homology of (E_r, d_r)
    bool e1_matches_hh = true;

    std::size_t dim(int r, int p, int n) const;
    std::size_t d_rank(int r, int p, int n) const;
};

// Default C is r_max + 2 so that weights 0 and 1 are exact.
SpectralPages spectral_pages(const Algebra& a, int N, int r_max, int C = -1, const EngineOptions& opt = {});

struct DegenerationReport {
    SpectralPages pages;
    bool degenerate = true;
    std::optional<PageEntry> first_nonzero;
    bool abutment_checked = false;
    bool abutment_ok = false;
    std::array<std::size_t, 2> hp{};
    std::array<std::size_t, 2> e1_sum{};
    std::array<std::size_t, 2> last_page_sum{};  // E_{r_max+1} at weight 0, by parity
};

DegenerationReport degeneration_check(const Algebra& a, int N, int r_max, int C = -1, const EngineOptions& opt = {});

}  // namespace cyclotome
