#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cyclotome/cli/io.hpp"

namespace cyclotome::io {

struct CriterionOutcome {
    bool pass = false;
    json detail = json::object();
};

struct Criterion {
    int id = 0;
    std::string name;
    std::vector<std::string> tags;
    std::function<CriterionOutcome()> run;
    double budget_seconds = 0;  // wall-clock limit enforced by the acceptance runner
};

const std::vector<Criterion>& acceptance_criteria();

// Matches an id, a tag or a substring of the name; empty selects everything.
bool criterion_matches(const Criterion& c, const std::string& filter);

// Tables over the whole corpus: HH, HC and HP of every algebra, marks and
// Tate tables. Must be byte-identical for any thread count.
json corpus_tables();

}  // namespace cyclotome::io
