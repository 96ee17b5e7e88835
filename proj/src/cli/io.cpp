#include "cyclotome/cli/io.hpp"

#include <fstream>

#include "cyclotome/linalg/error.hpp"

namespace cyclotome::io {

namespace {

std::uint32_t parse_prime(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used == s.size() && v > 1 && v < (1ul << 31), ErrorKind::Input, "bad ring: " + whole);
    return static_cast<std::uint32_t>(v);
}

const json& field(const json& j, const char* key) {
    require(j.is_object() && j.contains(key), ErrorKind::Input, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <class T>
T value_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::vector<IntMat> parse_steps(const json& j, std::size_t rows) {
    std::vector<IntMat> out;
    for (const auto& s : j) out.push_back(parse_columns(s, rows));
    return out;
}

json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

}  // namespace

Ring parse_ring(const std::string& s) {
    if (s == "Q") return Ring::rationals();
    if (s == "Z") return Ring::integers();
    if (s.size() > 1 && s[0] == 'F') {
        const auto p = parse_prime(s.substr(1), s);
        require(is_prime(p), ErrorKind::Input, "not a prime field: " + s);
        return Ring::prime_field(p);
    }
    if (s.rfind("Z/", 0) == 0) {
        const auto n = parse_prime(s.substr(2), s);
        std::uint32_t p = 2;
        while (n % p) ++p;
        std::uint32_t m = n;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        require(m == 1, ErrorKind::Input, "Z/n needs a prime power: " + s);
        return Ring::cyclic(p, k);
    }
    fail(ErrorKind::Input, "unknown ring: " + s);
}

std::string ring_label(const Ring& r) {
    switch (r.kind()) {
        case RingKind::Rationals: return "Q";
        case RingKind::Integers: return "Z";
        case RingKind::PrimeField: return "F" + std::to_string(r.prime());
        case RingKind::CyclicRing: return "Z/" + r.modulus().get_str();
    }
    return r.name();
}

Scalar parse_scalar(const json& j) {
    if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<std::int64_t>()));
    require(j.is_string(), ErrorKind::Input, "coefficient must be an integer or a \"p/q\" string");
    Scalar s;
    try {
        s = Scalar(j.get<std::string>());
        s.canonicalize();
    } catch (const std::exception&) {
        fail(ErrorKind::Input, "bad coefficient: " + j.get<std::string>());
    }
    return s;
}

IntMat parse_columns(const json& j, std::size_t rows) {
    require(j.is_array(), ErrorKind::Input, "matrix must be a list of columns");
    IntMat m = int_zero(rows, j.size());
    for (std::size_t c = 0; c < j.size(); ++c) {
        require(j[c].is_array() && j[c].size() == rows, ErrorKind::Input,
                "matrix column " + std::to_string(c) + " must have " + std::to_string(rows) + " entries");
        for (std::size_t r = 0; r < rows; ++r) {
            const Scalar v = parse_scalar(j[c][r]);
            require(v.get_den() == 1, ErrorKind::Input, "matrix entries must be integers");
            m(r, c) = v.get_num();
        }
    }
    return m;
}

json columns_json(const IntMat& m) {
    json out = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
        json col = json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) col.push_back(integer_json(m(r, c)));
        out.push_back(std::move(col));
    }
    return out;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::Input, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::Input, path + ": " + e.what());
    }
}

void check_schema(const json& j, const std::string& kind) {
    const std::string want = "cyclotome." + kind + "/1";
    require(j.is_object() && j.contains("schema") && j.at("schema") == want, ErrorKind::Input,
            "expected a document with \"schema\": \"" + want + "\"");
}

GroupTable parse_group(const json& j) {
    if (j.is_string()) return group_preset(j.get<std::string>());
    auto labels = field(j, "labels").get<std::vector<std::string>>();
    auto table = field(j, "table").get<std::vector<std::vector<int>>>();
    return GroupTable(std::move(labels), std::move(table));
}

AlgebraSpec parse_algebra_spec(const json& j) {
    check_schema(j, "algebra");
    AlgebraSpec s;
    s.name = value_or<std::string>(j, "name", "algebra");
    s.ring = parse_ring(field(j, "ring").get<std::string>());
    s.basis = field(j, "basis").get<std::vector<std::string>>();
    for (const auto& [label, c] : field(j, "unit").items()) s.unit.emplace_back(label, parse_scalar(c));
    for (const auto& e : field(j, "mult")) {
        require(e.is_array() && (e.size() == 3 || e.size() == 4), ErrorKind::Input,
                "mult entries are [left, right, result] or [left, right, result, coeff]");
        s.mult.push_back({e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<std::string>(),
                          e.size() == 4 ? parse_scalar(e[3]) : Scalar(1)});
    }
    auto map_entries = [](const json& list) {
        std::vector<AlgebraSpec::MapEntry> out;
        for (const auto& e : list) {
            require(e.is_array() && e.size() == 3, ErrorKind::Input, "map entries are [source, target, coeff]");
            out.push_back({e[0].get<std::string>(), e[1].get<std::string>(), parse_scalar(e[2])});
        }
        return out;
    };
    if (j.contains("grading")) s.grading = j.at("grading").get<std::vector<int>>();
    s.sign_graded = value_or(j, "sign_graded", false);
    if (j.contains("differential")) s.differential = map_entries(j.at("differential"));
    if (j.contains("group")) s.group = parse_group(j.at("group"));
    if (j.contains("sectors")) s.sectors = j.at("sectors").get<std::vector<std::string>>();
    if (j.contains("action"))
        for (const auto& g : j.at("action")) s.action.push_back(map_entries(g));
    if (j.contains("idempotents")) s.idempotents = j.at("idempotents").get<std::vector<std::string>>();
    s.truncation = value_or(j, "truncation", -1);
    if (j.contains("flags")) {
        const auto& f = j.at("flags");
        if (f.contains("smooth")) s.flags.smooth = f.at("smooth").get<bool>();
        if (f.contains("proper")) s.flags.proper = f.at("proper").get<bool>();
        s.flags.justification = value_or<std::string>(f, "justification", "");
    }
    return s;
}

FDM parse_fdm(const json& j) {
    check_schema(j, "fdm");
    FDM m;
    m.base = parse_ring(field(j, "ring").get<std::string>());
    m.p = value_or<std::uint32_t>(j, "p", m.base.prime());
    m.dim = field(j, "dim").get<std::size_t>();
    m.relations = j.contains("relations") ? parse_columns(j.at("relations"), m.dim) : int_zero(m.dim, 0);
    m.a = field(j, "a").get<int>();
    m.b = field(j, "b").get<int>();
    m.filtration = parse_steps(field(j, "filtration"), m.dim);
    m.phi = parse_steps(field(j, "phi"), m.dim);
    check_well_formed(m);
    return m;
}

GeneralizedFDM parse_generalized_fdm(const json& j) {
    check_schema(j, "gfdm");
    GeneralizedFDM m;
    m.dim = field(j, "dim").get<std::size_t>();
    m.relations = j.contains("relations") ? parse_columns(j.at("relations"), m.dim) : int_zero(m.dim, 0);
    m.a = field(j, "a").get<int>();
    m.b = field(j, "b").get<int>();
    m.filtration = parse_steps(field(j, "filtration"), m.dim);
    m.primes = field(j, "primes").get<std::vector<std::uint32_t>>();
    m.J = field(j, "J").get<int>();
    for (const auto& e : field(j, "phi"))
        m.phi[{field(e, "p").get<std::uint32_t>(), field(e, "i").get<int>(), field(e, "j").get<int>()}] =
            parse_columns(field(e, "columns"), m.dim);
    return m;
}

DeRhamData parse_de_rham(const json& j) {
    check_schema(j, "derham");
    DeRhamData d;
    d.p = field(j, "p").get<std::uint32_t>();
    d.k = value_or(j, "k", 2);
    d.variables = field(j, "variables").get<int>();
    d.window = field(j, "window").get<int>();
    if (j.contains("lift"))
        for (const auto& poly : j.at("lift")) {
            Polynomial f;
            for (const auto& t : poly) {
                const Scalar c = parse_scalar(field(t, "coeff"));
                require(c.get_den() == 1, ErrorKind::Input, "lift coefficients must be integers");
                f[field(t, "exps").get<Monomial>()] += c.get_num();
            }
            d.lift.push_back(std::move(f));
        }
    return d;
}

MackeyFunctor parse_mackey(const json& j, const SubgroupLattice& l) {
    check_schema(j, "mackey");
    MackeyFunctor m;
    m.ring = parse_ring(value_or<std::string>(j, "ring", "Z"));
    m.rank = field(j, "rank").get<std::vector<std::size_t>>();
    require(m.rank.size() == l.class_count(), ErrorKind::Input, "Mackey functor needs a rank for every subgroup class");
    const auto maps = orbit_maps(l);
    const auto& res = field(j, "restriction");
    const auto& tr = field(j, "transfer");
    require(res.size() == maps.size() && tr.size() == maps.size(), ErrorKind::Input,
            "Mackey functor needs " + std::to_string(maps.size()) + " restriction and transfer matrices");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        m.restriction.push_back(parse_columns(res[i], m.rank[maps[i].from]));
        m.transfer.push_back(parse_columns(tr[i], m.rank[maps[i].to]));
    }
    return m;
}

json to_json(const ModuleDescriptor& m) {
    json t = json::array();
    for (const auto& v : m.torsion) t.push_back(integer_json(v));
    return json{{"rank", m.rank}, {"torsion", t}};
}

json to_json(const HomologyTable& t) {
    json groups = json::array();
    for (const auto& [k, m] : t.groups) {
        json g{{"theory", k.theory}, {"degree", k.degree}};
        if (k.weight >= 0) g["weight"] = k.weight;
        if (k.sector >= 0) g["sector"] = k.sector;
        g["rank"] = m.rank;
        if (!m.torsion.empty()) g["torsion"] = to_json(m)["torsion"];
        g["reliable"] = t.unreliable.count(k) == 0;
        groups.push_back(std::move(g));
    }
    json out{{"ring", ring_label(t.ring)}, {"groups", groups}};
    if (!t.notes.empty()) out["notes"] = t.notes;
    return out;
}

json to_json(const FDMValidation& v) {
    return json{{"ok", v.ok()},          {"well_defined", v.well_defined}, {"nested", v.nested},
                {"axiom_i", v.axiom_i}, {"axiom_ii", v.axiom_ii},         {"failures", v.failures}};
}

json to_json(const FDMDescriptor& d) {
    auto list = [](const std::vector<ModuleDescriptor>& v) {
        json out = json::array();
        for (const auto& m : v) out.push_back(to_json(m));
        return out;
    };
    return json{{"a", d.a},
                {"b", d.b},
                {"module", to_json(d.module)},
                {"steps", list(d.steps)},
                {"graded", list(d.graded)},
                {"images", list(d.images)}};
}

json to_json(const SpanClass& c, std::size_t target_size, const GroupTable& g) {
    json middle = json::array();
    for (int e = 0; e < g.size(); ++e)
        if (mask_contains(c.middle, e)) middle.push_back(g.label(e));
    return json{{"source_point", c.point / target_size}, {"target_point", c.point % target_size}, {"middle", middle}};
}

}  // namespace cyclotome::io
