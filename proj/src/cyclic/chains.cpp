#include "cyclotome/cyclic/chains.hpp"

#include <cstdlib>

namespace cyclotome {

std::size_t default_max_cell() {
    if (const char* env = std::getenv("CYCLOTOME_MAX_CELL")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 200000;
}

Algebra chain_ready(const Algebra& a, bool relative) {
    if (relative && !a.idempotents.empty()) return a;
    if (a.unit_index()) return a;
    return rebase_unit(a);
}

}  // namespace cyclotome
