#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclotome/cli/io.hpp"

namespace cyclotome::io {

struct JobSpec {
    std::string command;
    std::string sub;  // burnside: marks | hom | compose; corpus: suite name
    std::string algebra;
    std::string fdm;
    std::string group;
    std::string input;    // JSON document for commands without a reference
    std::string functor;  // mackey-check: burnside | perm:<class> | file
    std::string module;   // tate: trivial | regular
    std::string ring;
    std::string filter;
    std::optional<int> N, C, rmax, precision, order, dim, vars;
    std::optional<int> h1, h2, h3;
    std::optional<std::pair<int, int>> window;
    std::vector<std::uint32_t> primes;
    int threads = 0;
    bool unnormalized = false;
};

enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_input = 2, exit_resource = 3 };

struct Report {
    json body;
    int exit_code = exit_ok;
};

json job_echo(const JobSpec& spec);
const std::vector<std::string>& command_names();

// Never throws for bad input; errors become a report with the matching exit code.
Report run_job(const JobSpec& spec);

// Canonical text of a report: two-space indent and a trailing newline.
std::string render(const json& j);

}  // namespace cyclotome::io
