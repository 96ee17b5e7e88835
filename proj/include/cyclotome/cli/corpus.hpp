#pragma once

// Named inputs. References are "corpus:<name>" for algebras, a preset or file
// for groups, "tate:<ring>:<i>" for FDMs and "gtate:<i>" for generalized ones;
// anything else is read as a JSON file.

#include <string>
#include <vector>

#include "cyclotome/algebra/algebra.hpp"
#include "cyclotome/fdm/fdm.hpp"
#include "cyclotome/fdm/generalized.hpp"

namespace cyclotome::io {

const std::vector<std::string>& corpus_algebra_names();
Algebra corpus_algebra(const std::string& name);

Algebra resolve_algebra(const std::string& ref);
GroupTable resolve_group(const std::string& ref);
FDM resolve_fdm(const std::string& ref);
GeneralizedFDM resolve_gfdm(const std::string& ref, const std::vector<std::uint32_t>& primes, int J);

}  // namespace cyclotome::io
