#include <cstdlib>

#include "cyclotome/cli/acceptance.hpp"
#include "cyclotome/cli/corpus.hpp"
#include "cyclotome/cli/jobs.hpp"
#include "cyclotome/linalg/error.hpp"
#include "doctest.h"

using namespace cyclotome;
using namespace cyclotome::io;

namespace {

const std::string golden_inputs = std::string(CYCLOTOME_SOURCE_DIR) + "/tests/golden/inputs/";

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Internal;
}

JobSpec job(std::string command) {
    JobSpec s;
    s.command = std::move(command);
    return s;
}

}  // namespace

TEST_CASE("ring labels round trip") {
    for (const char* label : {"Q", "Z", "F2", "F7", "Z/49", "Z/8"}) CHECK(ring_label(parse_ring(label)) == label);
    CHECK(parse_ring("Z/27") == Ring::cyclic(3, 3));
    for (const char* bad : {"F4", "F1", "Z/12", "Z/", "F", "R", "F2x", "Z/0"})
        CHECK(kind_of([&] { parse_ring(bad); }) == ErrorKind::Input);
}

TEST_CASE("scalars and column matrices") {
    CHECK(parse_scalar(json(5)) == Scalar(5));
    CHECK(parse_scalar(json("-6/4")) == Scalar(-3, 2));
    CHECK(kind_of([] { parse_scalar(json("x")); }) == ErrorKind::Input);
    CHECK(kind_of([] { parse_scalar(json(true)); }) == ErrorKind::Input);

    const json cols = json::parse("[[1, 0, -2], [0, \"3\", 4]]");
    const IntMat m = parse_columns(cols, 3);
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 2);
    CHECK(m(2, 0) == -2);
    CHECK(m(1, 1) == 3);
    CHECK(columns_json(m) == json::parse("[[1, 0, -2], [0, 3, 4]]"));
    CHECK(kind_of([&] { parse_columns(cols, 2); }) == ErrorKind::Input);
    CHECK(kind_of([] { parse_columns(json::parse("[[\"1/2\"]]"), 1); }) == ErrorKind::Input);
}

TEST_CASE("algebra documents") {
    const Algebra a = resolve_algebra(golden_inputs + "truncated_cubic.json");
    CHECK(a.name == "F3[x]/x^3");
    CHECK(a.dim() == 3);
    CHECK(a.ring == Ring::prime_field(3));
    CHECK(kind_of([] { resolve_algebra(golden_inputs + "bad_schema.json"); }) == ErrorKind::Input);
    CHECK(kind_of([] { resolve_algebra(golden_inputs + "absent.json"); }) == ErrorKind::Input);
    CHECK(kind_of([] { resolve_algebra("corpus:no_such_algebra"); }) == ErrorKind::Input);

    json doc = load_file(golden_inputs + "truncated_cubic.json");
    doc["mult"].push_back({"x", "x2", "y"});
    CHECK_THROWS(build_algebra(parse_algebra_spec(doc)));
}

TEST_CASE("every corpus name resolves") {
    for (const auto& n : corpus_algebra_names()) {
        const Algebra a = resolve_algebra("corpus:" + n);
        CHECK(a.name == n);
        CHECK(a.dim() > 0);
    }
    CHECK(resolve_group("S3").size() == 6);
    CHECK(resolve_fdm("tate:Z/49:1").a == 1);
    CHECK(kind_of([] { resolve_fdm("tate:Q:1"); }) != ErrorKind::Internal);
}

TEST_CASE("job exit codes") {
    CHECK(run_job(job("frobnicate")).exit_code == exit_input);

    JobSpec hh = job("hh");
    hh.algebra = "corpus:dual_numbers";
    hh.N = 3;
    const Report ok = run_job(hh);
    CHECK(ok.exit_code == exit_ok);
    CHECK(ok.body["status"] == "ok");
    CHECK(ok.body["job"]["N"] == 3);
    CHECK(render(ok.body) == render(run_job(hh).body));
    CHECK(render(ok.body).back() == '\n');

    JobSpec hc = job("hc");
    hc.algebra = "corpus:Z";
    hc.N = 2;
    CHECK(run_job(hc).exit_code == exit_input);

    JobSpec fdm = job("fdm-check");
    fdm.fdm = golden_inputs + "zero_frobenius.json";
    const Report failed = run_job(fdm);
    CHECK(failed.exit_code == exit_check_failed);
    CHECK(failed.body["result"]["validation"]["axiom_ii"] == false);

    JobSpec corpus = job("corpus");
    CHECK(run_job(corpus).exit_code == exit_input);
    corpus.sub = "acceptance";
    corpus.filter = "nothing matches this";
    CHECK(run_job(corpus).exit_code == exit_input);
}

TEST_CASE("cell bound turns into a resource error") {
    ::setenv("CYCLOTOME_MAX_CELL", "5", 1);
    JobSpec hh = job("hh");
    hh.algebra = "corpus:Q[S3]";
    hh.N = 2;
    const Report r = run_job(hh);
    ::unsetenv("CYCLOTOME_MAX_CELL");
    CHECK(r.exit_code == exit_resource);
    CHECK(r.body["status"] == "resource-error");
    CHECK(run_job(hh).exit_code == exit_ok);
}

TEST_CASE("criterion filters") {
    auto selected = [](const std::string& filter) {
        std::vector<int> ids;
        for (const auto& c : acceptance_criteria())
            if (criterion_matches(c, filter)) ids.push_back(c.id);
        return ids;
    };
    CHECK(selected("").size() == 12);
    CHECK(selected("1") == std::vector<int>{1});
    CHECK(selected("12") == std::vector<int>{12});
    CHECK(selected("burnside") == std::vector<int>{11});
    CHECK(selected("Morita") == std::vector<int>{4});
    CHECK(selected("cartier") == std::vector<int>{8, 9, 10});
    for (const auto& c : acceptance_criteria()) CHECK(c.budget_seconds > 0);
}
