#pragma once

// Filtered modules over Z with, for each declared prime p and precision
// j <= J, maps phi^p_{i,j} : F^i M -> M / p^j. Matrices act on the generators
// of F^i as in FDM; entries of phi^p_{i,j} are read mod p^j.

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cyclotome/linalg/module.hpp"

namespace cyclotome {

struct GeneralizedFDM {
    std::size_t dim = 0;
    IntMat relations;
    int a = 0;
    int b = 1;
    std::vector<IntMat> filtration;  // generators of F^i, i = a..b-1
    std::vector<std::uint32_t> primes;
    int J = 1;
    std::map<std::tuple<std::uint32_t, int, int>, IntMat> phi;  // (p, i, j)

    const IntMat& step(int i) const { return filtration[static_cast<std::size_t>(i - a)]; }
    const IntMat& phi_at(std::uint32_t p, int i, int j) const;
};

// R(i): M = Z, F^i = M, F^{i+1} = 0, phi^p_{i,j} = id for every p and j.
GeneralizedFDM generalized_tate(int i, const std::vector<std::uint32_t>& primes, int J);

struct GFDMFailure {
    std::uint32_t p = 0;
    int i = 0;
    int j = 0;
    std::string what;
};

struct GFDMValidation {
    std::map<std::uint32_t, bool> per_prime;
    std::vector<GFDMFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Tower compatibility is reported at (p, i, j+1), rescaling at (p, i, j).
GFDMValidation gfdm_validate(const GeneralizedFDM& m);

struct TowerLevel {
    int j = 0;
    ModuleDescriptor h0;
    ModuleDescriptor h1;
    bool h0_onto_previous = true;  // reduction H^0 at level j onto level j-1
};

struct ConeTower {
    std::uint32_t p = 0;
    std::vector<TowerLevel> levels;  // j = 1..J
    bool mittag_leffler = true;      // images of H^0 from level J and J-1 agree at every j <= J-2
};

// For each prime: cone of id - phi^p_{0,j} : F^0 M / p^j -> M / p^j, j = 1..J.
// A finite-precision shadow of the profinite object; nothing is completed.
std::vector<ConeTower> tc_cone_tower(const GeneralizedFDM& m);

}  // namespace cyclotome
