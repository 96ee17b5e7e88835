#include "cyclotome/algebra/algebra.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "cyclotome/linalg/error.hpp"

namespace cyclotome {

namespace {

bool same(const AlgVec& a, const AlgVec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].index != b[i].index || a[i].value != b[i].value) return false;
    return true;
}

AlgVec combine(const RingScalar& f, AlgVec v) {
    canonicalize(f, v);
    return v;
}

[[noreturn]] void invalid(const std::string& what) { fail(ErrorKind::Validation, what); }

}  // namespace

int Algebra::max_degree() const {
    int m = 0;
    for (int d : grading) m = std::max(m, d);
    return m;
}

std::optional<std::uint32_t> Algebra::unit_index() const {
    if (unit.size() == 1 && unit[0].value == 1) return unit[0].index;
    return std::nullopt;
}

std::uint32_t Algebra::index_of(const std::string& label) const {
    auto it = std::find(basis.begin(), basis.end(), label);
    require(it != basis.end(), ErrorKind::Input, "unknown basis label '" + label + "'");
    return static_cast<std::uint32_t>(it - basis.begin());
}

AlgVec Algebra::multiply(const AlgVec& x, const AlgVec& y) const {
    const RingScalar f{ring};
    AlgVec out;
    for (const auto& a : x)
        for (const auto& b : y) {
            Scalar c = ring.mul(a.value, b.value);
            if (c == 0) continue;
            for (const auto& e : product(a.index, b.index)) out.push_back({e.index, ring.mul(c, e.value)});
        }
    return combine(f, std::move(out));
}

AlgVec apply(const Ring& ring, const SparseMatrix& m, const AlgVec& x) {
    AlgVec out;
    for (const auto& a : x)
        for (const auto& e : m.col(a.index)) out.push_back({e.index, ring.mul(a.value, e.value)});
    return combine(RingScalar{ring}, std::move(out));
}

void validate_algebra(Algebra& a) {
    const std::size_t n = a.dim();
    const RingScalar f{a.ring};
    const auto& L = a.basis;
    require(n > 0, ErrorKind::Validation, "algebra has empty basis");
    {
        std::unordered_set<std::string> seen;
        for (const auto& l : L) {
            require(!l.empty(), ErrorKind::Validation, "empty basis label");
            require(seen.insert(l).second, ErrorKind::Validation, "duplicate basis label '" + l + "'");
        }
    }
    require(a.products.size() == n * n, ErrorKind::Validation, "structure constant table has wrong size");
    auto check_vec = [&](const AlgVec& v, const std::string& what) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            require(v[k].index < n, ErrorKind::Validation, what + ": index out of range");
            require(k == 0 || v[k - 1].index < v[k].index, ErrorKind::Validation, what + ": unsorted entries");
            require(v[k].value != 0 && a.ring.normalize(v[k].value) == v[k].value, ErrorKind::Validation,
                    what + ": coefficient not canonical in " + a.ring.name());
        }
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) check_vec(a.product(i, j), "product (" + L[i] + ", " + L[j] + ")");
    check_vec(a.unit, "unit");
    require(!a.unit.empty(), ErrorKind::Validation, "unit is zero");

    if (a.graded()) {
        require(a.grading.size() == n, ErrorKind::Validation, "grading has wrong length");
        for (std::size_t i = 0; i < n; ++i)
            require(a.grading[i] >= 0, ErrorKind::Validation, "negative degree on '" + L[i] + "'");
    }
    require(!a.sign_graded || a.graded(), ErrorKind::Validation, "sign-graded algebra needs a grading");
    if (a.truncation >= 0) {
        require(a.graded(), ErrorKind::Validation, "truncated algebra needs a grading");
    }

    for (std::size_t i = 0; i < n; ++i) {
        const AlgVec e = a.basis_vector(i);
        if (!same(a.multiply(a.unit, e), e) || !same(a.multiply(e, a.unit), e))
            invalid("unit law fails at basis element '" + L[i] + "'");
    }

    if (a.graded())
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& e : a.product(i, j))
                    if (a.grading[e.index] != a.grading[i] + a.grading[j])
                        invalid("grading violated by product (" + L[i] + ", " + L[j] + ") -> " + L[e.index]);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const AlgVec& ij = a.product(i, j);
            for (std::size_t l = 0; l < n; ++l) {
                AlgVec lhs, rhs;
                for (const auto& e : ij)
                    for (const auto& g : a.product(e.index, l)) lhs.push_back({g.index, a.ring.mul(e.value, g.value)});
                for (const auto& e : a.product(j, l))
                    for (const auto& g : a.product(i, e.index)) rhs.push_back({g.index, a.ring.mul(e.value, g.value)});
                if (!same(combine(f, std::move(lhs)), combine(f, std::move(rhs))))
                    invalid("associativity fails on (" + L[i] + ", " + L[j] + ", " + L[l] + ")");
            }
        }

    if (a.sectors) {
        const auto& s = *a.sectors;
        require(s.degree.size() == n, ErrorKind::Validation, "group grading has wrong length");
        for (int d : s.degree) require(d >= 0 && d < s.group.size(), ErrorKind::Validation, "group degree out of range");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& e : a.product(i, j))
                    if (s.degree[e.index] != s.group.mul(s.degree[i], s.degree[j]))
                        invalid("group grading violated by product (" + L[i] + ", " + L[j] + ")");
        for (const auto& e : a.unit)
            require(s.degree[e.index] == s.group.identity(), ErrorKind::Validation, "unit not in identity sector");
    }

    if (a.differential) {
        const auto& d = *a.differential;
        require(d.rows() == n && d.cols() == n, ErrorKind::Validation, "differential has wrong shape");
        require(a.graded(), ErrorKind::Validation, "differential needs a grading");
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& e : d.col(j))
                if (a.grading[e.index] + 1 != a.grading[j])
                    invalid("differential of '" + L[j] + "' is not of degree -1");
        for (std::size_t j = 0; j < n; ++j)
            if (!apply(a.ring, d, apply(a.ring, d, a.basis_vector(j))).empty())
                invalid("d^2 != 0 on '" + L[j] + "'");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const AlgVec ei = a.basis_vector(i), ej = a.basis_vector(j);
                AlgVec lhs = apply(a.ring, d, a.product(i, j));
                AlgVec r1 = a.multiply(apply(a.ring, d, ei), ej);
                AlgVec r2 = a.multiply(ei, apply(a.ring, d, ej));
                Scalar sign = (a.sign_degree(i) % 2) ? -1 : 1;
                AlgVec rhs = axpy(f, r1, f.from_scalar(sign), r2);
                if (!same(lhs, rhs)) invalid("Leibniz rule fails on (" + L[i] + ", " + L[j] + ")");
            }
    }

    if (a.action) {
        const auto& act = *a.action;
        const GroupTable& G = act.group;
        require(static_cast<int>(act.matrices.size()) == G.size(), ErrorKind::Validation,
                "action needs one matrix per group element");
        for (const auto& m : act.matrices)
            require(m.rows() == n && m.cols() == n, ErrorKind::Validation, "action matrix has wrong shape");
        for (std::size_t j = 0; j < n; ++j)
            if (!same(apply(a.ring, act.matrices[G.identity()], a.basis_vector(j)), a.basis_vector(j)))
                invalid("identity element acts nontrivially on '" + L[j] + "'");
        for (int g = 0; g < G.size(); ++g) {
            const auto& M = act.matrices[g];
            for (int h = 0; h < G.size(); ++h)
                for (std::size_t j = 0; j < n; ++j) {
                    AlgVec x = apply(a.ring, M, apply(a.ring, act.matrices[h], a.basis_vector(j)));
                    if (!same(x, apply(a.ring, act.matrices[G.mul(g, h)], a.basis_vector(j))))
                        invalid("action is not a homomorphism at (" + G.label(g) + ", " + G.label(h) + ")");
                }
            if (!same(apply(a.ring, M, a.unit), a.unit)) invalid("element " + G.label(g) + " does not fix the unit");
            for (std::size_t i = 0; i < n; ++i) {
                AlgVec mi = apply(a.ring, M, a.basis_vector(i));
                for (const auto& e : mi)
                    if (a.degree(e.index) != a.degree(i))
                        invalid("element " + G.label(g) + " does not preserve the grading on '" + L[i] + "'");
                for (std::size_t j = 0; j < n; ++j) {
                    AlgVec lhs = apply(a.ring, M, a.product(i, j));
                    AlgVec rhs = a.multiply(mi, apply(a.ring, M, a.basis_vector(j)));
                    if (!same(lhs, rhs))
                        invalid("element " + G.label(g) + " is not an algebra automorphism on (" + L[i] + ", " + L[j] +
                                ")");
                }
                if (a.differential) {
                    AlgVec x = apply(a.ring, M, apply(a.ring, *a.differential, a.basis_vector(i)));
                    AlgVec y = apply(a.ring, *a.differential, mi);
                    if (!same(x, y)) invalid("element " + G.label(g) + " does not commute with d on '" + L[i] + "'");
                }
            }
        }
    }

    if (a.idempotents.empty())
        if (auto u = a.unit_index()) a.idempotents = {*u};
    a.idem_left.clear();
    a.idem_right.clear();
    if (a.idempotents.empty()) return;
    const auto& I = a.idempotents;
    AlgVec sum;
    for (std::size_t s = 0; s < I.size(); ++s) {
        require(I[s] < n, ErrorKind::Validation, "idempotent index out of range");
        sum.push_back({I[s], Scalar(1)});
        for (std::size_t t = 0; t < I.size(); ++t) {
            const AlgVec& p = a.product(I[s], I[t]);
            bool ok = s == t ? same(p, a.basis_vector(I[s])) : p.empty();
            if (!ok) invalid("idempotents '" + L[I[s]] + "', '" + L[I[t]] + "' are not orthogonal idempotents");
        }
    }
    if (!same(combine(f, std::move(sum)), a.unit)) invalid("idempotents do not sum to the unit");
    a.idem_left.assign(n, -1);
    a.idem_right.assign(n, -1);
    for (std::size_t b = 0; b < n; ++b) {
        const AlgVec e = a.basis_vector(b);
        for (std::size_t s = 0; s < I.size(); ++s) {
            const AlgVec& l = a.product(I[s], b);
            if (!l.empty()) {
                if (!same(l, e) || a.idem_left[b] >= 0)
                    invalid("basis element '" + L[b] + "' is not homogeneous for the idempotents");
                a.idem_left[b] = static_cast<int>(s);
            }
            const AlgVec& r = a.product(b, I[s]);
            if (!r.empty()) {
                if (!same(r, e) || a.idem_right[b] >= 0)
                    invalid("basis element '" + L[b] + "' is not homogeneous for the idempotents");
                a.idem_right[b] = static_cast<int>(s);
            }
        }
        require(a.idem_left[b] >= 0 && a.idem_right[b] >= 0, ErrorKind::Validation,
                "basis element '" + L[b] + "' is killed by every idempotent");
    }
}

Algebra build_algebra(const AlgebraSpec& spec) {
    Algebra a;
    a.name = spec.name;
    a.ring = spec.ring;
    a.basis = spec.basis;
    const std::size_t n = a.basis.size();
    require(n > 0, ErrorKind::Input, "algebra spec has empty basis");
    std::unordered_map<std::string, std::uint32_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        require(idx.emplace(a.basis[i], static_cast<std::uint32_t>(i)).second, ErrorKind::Input,
                "duplicate basis label '" + a.basis[i] + "'");
    auto lookup = [&](const std::string& l) {
        auto it = idx.find(l);
        require(it != idx.end(), ErrorKind::Input, "unknown basis label '" + l + "'");
        return it->second;
    };
    const RingScalar f{a.ring};
    a.products.assign(n * n, {});
    for (const auto& p : spec.mult)
        a.products[lookup(p.left) * n + lookup(p.right)].push_back({lookup(p.result), a.ring.normalize(p.coeff)});
    for (auto& v : a.products) canonicalize(f, v);
    if (spec.unit.empty()) {
        auto it = idx.find("1");
        require(it != idx.end(), ErrorKind::Input, "algebra spec has no unit");
        a.unit = a.basis_vector(it->second);
    } else {
        for (const auto& [l, c] : spec.unit) a.unit.push_back({lookup(l), a.ring.normalize(c)});
        canonicalize(f, a.unit);
    }
    a.grading = spec.grading;
    a.sign_graded = spec.sign_graded;
    a.truncation = spec.truncation;
    auto matrix = [&](const std::vector<AlgebraSpec::MapEntry>& entries) {
        std::vector<Triplet> t;
        for (const auto& e : entries) t.push_back({lookup(e.target), lookup(e.source), e.coeff});
        return sparse_from_triplets(n, n, std::move(t), a.ring);
    };
    if (spec.differential) a.differential = matrix(*spec.differential);
    if (!spec.sectors.empty()) {
        require(spec.group.has_value(), ErrorKind::Input, "group grading needs a group");
        require(spec.sectors.size() == n, ErrorKind::Input, "group grading has wrong length");
        GroupGrading g{*spec.group, {}};
        for (const auto& l : spec.sectors) g.degree.push_back(spec.group->index_of(l));
        a.sectors = std::move(g);
    }
    if (!spec.action.empty()) {
        require(spec.group.has_value(), ErrorKind::Input, "action needs a group");
        require(static_cast<int>(spec.action.size()) == spec.group->size(), ErrorKind::Input,
                "action needs one matrix per group element");
        GroupAction act{*spec.group, {}};
        for (const auto& m : spec.action) act.matrices.push_back(matrix(m));
        a.action = std::move(act);
    }
    for (const auto& l : spec.idempotents) a.idempotents.push_back(lookup(l));
    a.flags = spec.flags;
    validate_algebra(a);
    return a;
}

Algebra change_ring(const Algebra& src, const Ring& ring) {
    Algebra a = src;
    a.ring = ring;
    const RingScalar f{ring};
    auto fix = [&](AlgVec& v) {
        for (auto& e : v) e.value = ring.normalize(e.value);
        canonicalize(f, v);
    };
    auto fix_matrix = [&](SparseMatrix& m) {
        for (std::size_t j = 0; j < m.cols(); ++j) fix(m.col(j));
    };
    for (auto& p : a.products) fix(p);
    fix(a.unit);
    if (a.differential) fix_matrix(*a.differential);
    if (a.action)
        for (auto& m : a.action->matrices) fix_matrix(m);
    a.w2_lift.reset();
    a.name = src.name + "/" + ring.name();
    validate_algebra(a);
    return a;
}

Algebra rebase_unit(const Algebra& src) {
    if (src.unit_index()) return src;
    const Ring& R = src.ring;
    const std::size_t n = src.dim();
    std::optional<std::uint32_t> pivot;
    for (const auto& e : src.unit) {
        if (!R.is_unit(e.value)) continue;
        if (src.degree(e.index) != 0) continue;
        if (src.sectors && src.sectors->degree[e.index] != src.sectors->group.identity()) continue;
        pivot = e.index;
        break;
    }
    require(pivot.has_value(), ErrorKind::Validation, "unit has no invertible coordinate to rebase on");
    const std::uint32_t i = *pivot;
    Scalar ui{};
    for (const auto& e : src.unit)
        if (e.index == i) ui = e.value;
    const Scalar inv = R.inverse(ui);
    const RingScalar f{R};
    // old coordinates -> new coordinates
    auto convert_vec = [&](const AlgVec& x) {
        AlgVec y;
        Scalar xi = 0;
        for (const auto& e : x)
            if (e.index == i) xi = e.value;
        const Scalar c = R.mul(xi, inv);
        for (const auto& e : x)
            if (e.index != i) y.push_back(e);
        if (c != 0) {
            y.push_back({i, c});
            for (const auto& e : src.unit)
                if (e.index != i) y.push_back({e.index, R.neg(R.mul(c, e.value))});
        }
        canonicalize(f, y);
        return y;
    };
    // new basis vector -> old coordinates
    auto old_of = [&](std::size_t b) { return b == i ? src.unit : src.basis_vector(b); };
    Algebra a = src;
    a.idempotents.clear();
    a.w2_lift.reset();
    std::string label = "1";
    while (std::find(src.basis.begin(), src.basis.end(), label) != src.basis.end()) label += "'";
    a.basis[i] = label;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            a.products[x * n + y] = convert_vec(src.multiply(old_of(x), old_of(y)));
    a.unit = a.basis_vector(i);
    auto convert_matrix = [&](const SparseMatrix& m) {
        SparseMatrix out(n, n);
        for (std::size_t b = 0; b < n; ++b) out.col(b) = convert_vec(apply(R, m, old_of(b)));
        return out;
    };
    if (src.differential) a.differential = convert_matrix(*src.differential);
    if (src.action)
        for (std::size_t g = 0; g < src.action->matrices.size(); ++g)
            a.action->matrices[g] = convert_matrix(src.action->matrices[g]);
    validate_algebra(a);
    return a;
}

}  // namespace cyclotome
