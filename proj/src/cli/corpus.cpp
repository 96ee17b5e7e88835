#include "cyclotome/cli/corpus.hpp"

#include <functional>
#include <map>

#include "cyclotome/algebra/constructions.hpp"
#include "cyclotome/cli/io.hpp"
#include "cyclotome/linalg/error.hpp"

namespace cyclotome::io {

namespace {

Algebra dual_numbers() {
    AlgebraSpec s;
    s.name = "dual_numbers";
    s.ring = Ring::rationals();
    s.basis = {"1", "e"};
    s.unit = {{"1", 1}};
    s.mult = {{"1", "1", "1", 1}, {"1", "e", "e", 1}, {"e", "1", "e", 1}};
    s.flags = {false, true, "e^2 = 0: finite dimensional, HH unbounded"};
    return build_algebra(s);
}

Algebra named(Algebra a, const std::string& name) {
    a.name = name;
    return a;
}

const std::map<std::string, std::function<Algebra()>>& builders() {
    static const std::map<std::string, std::function<Algebra()>> table = [] {
        std::map<std::string, std::function<Algebra()>> t;
        for (const char* r : {"Q", "Z", "F2", "F3", "F5"}) t[r] = [r] { return named(ground_ring(parse_ring(r)), r); };
        t["dual_numbers"] = dual_numbers;
        t["pathA2"] = [] { return named(path_algebra(Quiver{2, {{0, 1}}, {"a"}}, Ring::rationals()), "pathA2"); };
        t["M2Q"] = [] { return named(matrix_algebra(ground_ring(Ring::rationals()), 2), "M2Q"); };
        t["QxQ"] = [] {
            const Algebra q = ground_ring(Ring::rationals());
            return named(direct_product(q, q), "QxQ");
        };
        t["F2[C3]"] = [] { return named(group_algebra(GroupTable::cyclic(3), Ring::prime_field(2)), "F2[C3]"); };
        t["F3[C2]"] = [] { return named(group_algebra(GroupTable::cyclic(2), Ring::prime_field(3)), "F3[C2]"); };
        t["F2[C2]"] = [] { return named(group_algebra(GroupTable::cyclic(2), Ring::prime_field(2)), "F2[C2]"); };
        t["Q[S3]"] = [] { return named(group_algebra(GroupTable::symmetric(3), Ring::rationals()), "Q[S3]"); };
        t["M2(F3)"] = [] { return named(matrix_algebra(ground_ring(Ring::prime_field(3)), 2), "M2(F3)"); };
        t["M2(F2[C3])"] = [] {
            return named(matrix_algebra(group_algebra(GroupTable::cyclic(3), Ring::prime_field(2)), 2), "M2(F2[C3])");
        };
        t["F2[x]"] = [] { return named(truncated_polynomials(Ring::prime_field(2), 1, 6), "F2[x]"); };
        t["F5[x]"] = [] { return named(truncated_polynomials(Ring::prime_field(5), 1, 6), "F5[x]"); };
        t["F3[x,y]"] = [] { return named(truncated_polynomials(Ring::prime_field(3), 2, 4), "F3[x,y]"); };
        t["dg_smoke"] = [] { return named(dg_smoke_algebra(Ring::rationals()), "dg_smoke"); };
        return t;
    }();
    return table;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out{""};
    for (char c : s) {
        if (c == sep)
            out.emplace_back();
        else
            out.back() += c;
    }
    return out;
}

int parse_int(const std::string& s, const std::string& ref) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(!s.empty() && used == s.size(), ErrorKind::Input, "bad reference: " + ref);
    return v;
}

}  // namespace

const std::vector<std::string>& corpus_algebra_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : builders()) n.push_back(k);
        return n;
    }();
    return names;
}

Algebra corpus_algebra(const std::string& name) {
    const auto it = builders().find(name);
    require(it != builders().end(), ErrorKind::Input, "no corpus algebra named " + name);
    return it->second();
}

Algebra resolve_algebra(const std::string& ref) {
    require(!ref.empty(), ErrorKind::Input, "an algebra reference is required");
    if (ref.rfind("corpus:", 0) == 0) return corpus_algebra(ref.substr(7));
    return build_algebra(parse_algebra_spec(load_file(ref)));
}

GroupTable resolve_group(const std::string& ref) {
    require(!ref.empty(), ErrorKind::Input, "a group reference is required");
    if (ref.find('.') == std::string::npos) return group_preset(ref);
    const json j = load_file(ref);
    check_schema(j, "group");
    return parse_group(j.at("group"));
}

FDM resolve_fdm(const std::string& ref) {
    require(!ref.empty(), ErrorKind::Input, "an FDM reference is required");
    if (ref.rfind("tate:", 0) == 0) {
        const auto parts = split(ref, ':');
        require(parts.size() == 3, ErrorKind::Input, "expected tate:<ring>:<i>, got " + ref);
        const Ring r = parse_ring(parts[1]);
        require(r.is_modular(), ErrorKind::Input, "Tate objects need a ring Z/p^k");
        return tate_object(r, r.prime(), parse_int(parts[2], ref));
    }
    return parse_fdm(load_file(ref));
}

GeneralizedFDM resolve_gfdm(const std::string& ref, const std::vector<std::uint32_t>& primes, int J) {
    require(!ref.empty(), ErrorKind::Input, "a generalized FDM reference is required");
    if (ref.rfind("gtate:", 0) == 0) {
        require(!primes.empty(), ErrorKind::Input, "gtate needs --primes");
        for (auto p : primes) require(is_prime(p), ErrorKind::Input, "not a prime: " + std::to_string(p));
        require(J >= 1, ErrorKind::Input, "gtate needs --precision >= 1");
        return generalized_tate(parse_int(ref.substr(6), ref), primes, J);
    }
    return parse_generalized_fdm(load_file(ref));
}

}  // namespace cyclotome::io
