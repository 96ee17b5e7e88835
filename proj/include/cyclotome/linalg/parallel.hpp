#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace cyclotome {

// Evaluates fn(i) for i in [0, n) in parallel; results are returned in index
// order and the lowest-index exception (if any) is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn&& fn) {
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    const long m = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < m; ++i) {
        try {
            out[i] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace cyclotome
