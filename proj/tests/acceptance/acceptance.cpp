#include <chrono>
#include <cstdio>
#include <string>

#include "cyclotome/cli/acceptance.hpp"
#include "cyclotome/linalg/error.hpp"

// One PASS/FAIL line per criterion; an optional argument filters criteria.
int main(int argc, char** argv) {
    using namespace cyclotome::io;
    const std::string filter = argc > 1 ? argv[1] : "";
    int failed = 0;
    for (const auto& c : acceptance_criteria()) {
        if (!criterion_matches(c, filter)) continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionOutcome o;
        std::string error;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            error = e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && s > c.budget_seconds) {
            o.pass = false;
            error = "over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
        }
        std::printf("%s  %2d  %-45s %8.2f s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), s);
        if (!o.pass) {
            ++failed;
            std::printf("      %s\n", error.empty() ? o.detail.dump().c_str() : error.c_str());
        }
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
