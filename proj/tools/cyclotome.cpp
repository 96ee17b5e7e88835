#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cyclotome/cli/jobs.hpp"

namespace {

std::pair<int, int> parse_window(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--window", "expected a..b");
    try {
        std::size_t used_a = 0, used_b = 0;
        const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
        const int lo = std::stoi(a, &used_a), hi = std::stoi(b, &used_b);
        if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(s);
        return {lo, hi};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--window", "expected a..b with integers a, b");
    }
}

template <class T>
void optional_int(CLI::App& app, const std::string& flag, std::optional<T>& target, const std::string& help) {
    app.add_option_function<int>(flag, [&target](int v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cyclotome::io;
    JobSpec spec;
    std::string out_path, window;
    bool timings = false;

    CLI::App app{"Cyclic homology, filtered Dieudonne modules and Burnside categories at desk scale"};
    app.add_option("command", spec.command, "one of: " + [] {
        std::string s;
        for (const auto& c : command_names()) s += (s.empty() ? "" : ", ") + c;
        return s;
    }())->required();
    app.add_option("sub", spec.sub, "burnside: marks|hom|compose; corpus: acceptance|tables");
    app.add_option("--algebra", spec.algebra, "corpus:<name> or an algebra JSON file");
    app.add_option("--fdm", spec.fdm, "tate:<ring>:<i>, gtate:<i> or an FDM JSON file");
    app.add_option("--group", spec.group, "group preset (trivial, C<n>, S<n>, D<n>) or a group JSON file");
    app.add_option("--input", spec.input, "JSON input for derham-fdm and cartier-modp");
    app.add_option("--functor", spec.functor, "mackey-check: burnside, perm:<class> or a JSON file");
    app.add_option("--module", spec.module, "tate: trivial or regular");
    app.add_option("--ring", spec.ring, "Q, Z, F<p> or Z/<p^k>");
    app.add_option("--filter", spec.filter, "corpus acceptance: criterion id, tag or name fragment");
    optional_int(app, "--N", spec.N, "top degree or window bound");
    optional_int(app, "--C", spec.C, "column window");
    optional_int(app, "--rmax", spec.rmax, "last spectral page with a differential");
    optional_int(app, "--precision", spec.precision, "p-adic precision");
    optional_int(app, "--n", spec.order, "order of the cyclic group (tate)");
    optional_int(app, "--dim", spec.dim, "module dimension (tate, ttle)");
    optional_int(app, "--vars", spec.vars, "number of variables (derham-fdm, cartier-modp)");
    optional_int(app, "--h1", spec.h1, "subgroup class index");
    optional_int(app, "--h2", spec.h2, "subgroup class index");
    optional_int(app, "--h3", spec.h3, "subgroup class index");
    app.add_option("--window", window, "degree window a..b");
    app.add_option("--primes", spec.primes, "comma-separated primes")->delimiter(',');
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--threads", spec.threads, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);
    app.add_flag("--unnormalized", spec.unnormalized, "unnormalized chains on the two-column bicomplex");
    app.add_flag("--timings", timings, "print the wall time to stderr");

    try {
        app.parse(argc, argv);
        if (!window.empty()) spec.window = parse_window(window);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    const auto start = std::chrono::steady_clock::now();
    const Report report = run_job(spec);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string text = render(report.body);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return exit_input;
        }
    }
    if (report.body.contains("error")) std::cerr << "error: " << report.body["error"].get<std::string>() << "\n";
    if (timings) std::cerr << "time: " << seconds << " s\n";
    return report.exit_code;
}
