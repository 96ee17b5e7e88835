#include "cyclotome/algebra/constructions.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "cyclotome/linalg/error.hpp"
#include "cyclotome/linalg/kernels.hpp"

namespace cyclotome {

namespace {

std::uint32_t u32(std::size_t x) { return static_cast<std::uint32_t>(x); }

AlgVec canonical(const Ring& ring, AlgVec v) {
    canonicalize(RingScalar{ring}, v);
    return v;
}

std::string tuple_label(const Algebra& a, const std::vector<std::uint32_t>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + a.basis[t[i]];
    return s + ")";
}

}  // namespace

Algebra ground_ring(const Ring& ring) {
    Algebra a;
    a.name = ring.name();
    a.ring = ring;
    a.basis = {"1"};
    a.products = {{{0, Scalar(1)}}};
    a.unit = {{0, Scalar(1)}};
    a.flags = {true, true, "ground ring"};
    validate_algebra(a);
    if (ring.kind() == RingKind::PrimeField) a.w2_lift = std::make_shared<const Algebra>(ground_ring(Ring::cyclic(ring.prime(), 2)));
    return a;
}

Algebra group_algebra(const GroupTable& group, const Ring& ring) {
    const int n = group.size();
    Algebra a;
    a.name = ring.name() + "[G" + std::to_string(n) + "]";
    a.ring = ring;
    a.basis = group.labels();
    a.products.resize(static_cast<std::size_t>(n) * n);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) a.products[g * n + h] = {{u32(group.mul(g, h)), Scalar(1)}};
    a.unit = {{u32(group.identity()), Scalar(1)}};
    a.sectors = GroupGrading{group, {}};
    for (int g = 0; g < n; ++g) a.sectors->degree.push_back(g);
    GroupAction act{group, {}};
    for (int g = 0; g < n; ++g) {
        SparseMatrix m(n, n);
        for (int h = 0; h < n; ++h) m.col(h) = {{u32(group.conj(g, h)), Scalar(1)}};
        act.matrices.push_back(std::move(m));
    }
    a.action = std::move(act);
    if (ring.is_field()) {
        // Maschke: separable exactly when |G| is invertible
        const bool separable = ring.kind() == RingKind::Rationals || n % static_cast<int>(ring.prime()) != 0;
        a.flags = {separable, true, separable ? "separable group algebra" : "characteristic divides the group order"};
    }
    validate_algebra(a);
    if (ring.kind() == RingKind::PrimeField)
        a.w2_lift = std::make_shared<const Algebra>(group_algebra(group, Ring::cyclic(ring.prime(), 2)));
    return a;
}

Algebra path_algebra(const Quiver& q, const Ring& ring) {
    const int V = q.vertices;
    require(V >= 1, ErrorKind::Input, "quiver needs at least one vertex");
    const int E = static_cast<int>(q.arrows.size());
    for (auto [s, t] : q.arrows)
        require(s >= 0 && s < V && t >= 0 && t < V, ErrorKind::Input, "arrow endpoint out of range");
    std::vector<std::string> names = q.arrow_names;
    if (names.empty())
        for (int e = 0; e < E; ++e) names.push_back(E <= 26 ? std::string(1, char('a' + e)) : "a" + std::to_string(e + 1));
    require(static_cast<int>(names.size()) == E, ErrorKind::Input, "arrow name list has wrong length");

    // Kahn's algorithm; leftover vertices lie on an oriented cycle.
    std::vector<int> indeg(V, 0);
    for (auto [s, t] : q.arrows) ++indeg[t];
    std::vector<int> stack;
    for (int v = 0; v < V; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (auto [s, t] : q.arrows)
            if (s == v && --indeg[t] == 0) stack.push_back(t);
    }
    require(seen == V, ErrorKind::Input, "unsupported: quiver has an oriented cycle, path algebra is infinite-dimensional");

    struct Path {
        int source, target;
        std::vector<int> arrows;
    };
    std::vector<Path> paths;
    for (int v = 0; v < V; ++v) paths.push_back({v, v, {}});
    std::vector<Path> layer;
    for (int e = 0; e < E; ++e) layer.push_back({q.arrows[e].first, q.arrows[e].second, {e}});
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end(), [](const Path& x, const Path& y) { return x.arrows < y.arrows; });
        std::vector<Path> next;
        for (const auto& p : layer)
            for (int e = 0; e < E; ++e)
                if (q.arrows[e].first == p.target) {
                    Path r = p;
                    r.arrows.push_back(e);
                    r.target = q.arrows[e].second;
                    next.push_back(std::move(r));
                }
        for (auto& p : layer) paths.push_back(std::move(p));
        layer = std::move(next);
    }
    std::map<std::vector<int>, std::uint32_t> index;
    for (std::size_t i = V; i < paths.size(); ++i) index[paths[i].arrows] = u32(i);

    const std::size_t n = paths.size();
    const bool short_names = std::all_of(names.begin(), names.end(), [](const auto& s) { return s.size() == 1; });
    Algebra a;
    a.name = "path algebra";
    a.ring = ring;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = paths[i];
        if (p.arrows.empty()) {
            a.basis.push_back("e" + std::to_string(p.source + 1));
        } else {
            std::string l;
            for (std::size_t k = 0; k < p.arrows.size(); ++k) l += (k && !short_names ? "*" : "") + names[p.arrows[k]];
            a.basis.push_back(l);
        }
        a.grading.push_back(static_cast<int>(p.arrows.size()));
    }
    a.products.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto &p = paths[i], &r = paths[j];
            if (p.target != r.source) continue;
            std::uint32_t k;
            if (p.arrows.empty()) k = u32(j);
            else if (r.arrows.empty()) k = u32(i);
            else {
                std::vector<int> c = p.arrows;
                c.insert(c.end(), r.arrows.begin(), r.arrows.end());
                k = index.at(c);
            }
            a.products[i * n + j] = {{k, Scalar(1)}};
        }
    for (int v = 0; v < V; ++v) {
        a.unit.push_back({u32(v), Scalar(1)});
        a.idempotents.push_back(u32(v));
    }
    a.flags = {true, true, "path algebra of a finite acyclic quiver"};
    validate_algebra(a);
    return a;
}

Algebra matrix_algebra(const Algebra& A, int n) {
    require(n >= 1, ErrorKind::Input, "matrix size must be positive");
    if (n == 1) return A;
    const std::size_t d = A.dim(), N = static_cast<std::size_t>(n) * n * d;
    auto idx = [&](int i, int j, std::size_t k) { return u32((static_cast<std::size_t>(i) * n + j) * d + k); };
    Algebra a;
    a.name = "M" + std::to_string(n) + "(" + A.name + ")";
    a.ring = A.ring;
    a.sign_graded = A.sign_graded;
    a.truncation = A.truncation;
    a.flags = A.flags;
    if (a.flags.smooth || a.flags.proper) a.flags.justification = "Morita equivalent to " + A.name;
    a.basis.resize(N);
    a.products.resize(N * N);
    if (A.graded()) a.grading.resize(N);
    if (A.sectors) a.sectors = GroupGrading{A.sectors->group, std::vector<int>(N)};
    if (A.differential) a.differential = SparseMatrix(N, N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const std::uint32_t x = idx(i, j, k);
                a.basis[x] = "E" + std::to_string(i + 1) + std::to_string(j + 1) + (d == 1 ? "" : "." + A.basis[k]);
                if (A.graded()) a.grading[x] = A.grading[k];
                if (A.sectors) a.sectors->degree[x] = A.sectors->degree[k];
                if (A.differential)
                    for (const auto& e : A.differential->col(k)) a.differential->col(x).push_back({idx(i, j, e.index), e.value});
                for (int l = 0; l < n; ++l)
                    for (std::size_t m = 0; m < d; ++m) {
                        AlgVec& out = a.products[static_cast<std::size_t>(x) * N + idx(j, l, m)];
                        for (const auto& e : A.product(k, m)) out.push_back({idx(i, l, e.index), e.value});
                    }
            }
    for (int i = 0; i < n; ++i) {
        for (const auto& e : A.unit) a.unit.push_back({idx(i, i, e.index), e.value});
        for (auto s : A.idempotents) a.idempotents.push_back(idx(i, i, s));
    }
    a.unit = canonical(a.ring, std::move(a.unit));
    if (A.differential)
        for (std::size_t x = 0; x < N; ++x) a.differential->col(x) = canonical(a.ring, std::move(a.differential->col(x)));
    validate_algebra(a);
    return a;
}

Algebra cyclic_tensor_power(const Algebra& A, int p, std::size_t max_dim) {
    require(p >= 1, ErrorKind::Input, "tensor power exponent must be positive");
    const std::size_t d = A.dim();
    std::size_t N = 1;
    for (int i = 0; i < p; ++i) {
        require(N <= max_dim / d, ErrorKind::Resource,
                "tensor power dimension " + std::to_string(d) + "^" + std::to_string(p) + " exceeds the bound " +
                    std::to_string(max_dim));
        N *= d;
    }
    const Ring& R = A.ring;
    auto decode = [&](std::size_t x) {
        std::vector<std::uint32_t> t(p);
        for (int i = p - 1; i >= 0; --i) {
            t[i] = u32(x % d);
            x /= d;
        }
        return t;
    };
    auto encode = [&](const std::vector<std::uint32_t>& t) {
        std::size_t x = 0;
        for (auto v : t) x = x * d + v;
        return u32(x);
    };
    // Tensor product of one vector per slot.
    auto tensor = [&](const std::vector<AlgVec>& parts, const Scalar& coeff) {
        std::vector<std::pair<std::size_t, Scalar>> acc{{0, coeff}};
        for (const auto& part : parts) {
            std::vector<std::pair<std::size_t, Scalar>> next;
            for (const auto& [x, c] : acc)
                for (const auto& e : part) next.push_back({x * d + e.index, R.mul(c, e.value)});
            acc = std::move(next);
        }
        AlgVec out;
        for (auto& [x, c] : acc)
            if (c != 0) out.push_back({u32(x), c});
        return canonical(R, std::move(out));
    };
    auto odd = [&](std::uint32_t b) { return A.sign_degree(b) % 2 != 0; };

    Algebra a;
    a.name = A.name + "^(x" + std::to_string(p) + ")";
    a.ring = R;
    a.sign_graded = A.sign_graded;
    a.truncation = A.truncation;
    a.flags = A.flags;
    if (a.flags.smooth || a.flags.proper) a.flags.justification = "tensor power of " + A.name;
    a.basis.resize(N);
    a.products.resize(N * N);
    if (A.graded()) a.grading.assign(N, 0);
    std::vector<std::vector<std::uint32_t>> tuples(N);
    for (std::size_t x = 0; x < N; ++x) {
        tuples[x] = decode(x);
        a.basis[x] = tuple_label(A, tuples[x]);
        if (A.graded())
            for (auto v : tuples[x]) a.grading[x] += A.grading[v];
    }
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
            const auto &s = tuples[x], &t = tuples[y];
            std::vector<AlgVec> parts(p);
            bool zero = false;
            int flips = 0;
            for (int i = 0; i < p && !zero; ++i) {
                parts[i] = A.product(s[i], t[i]);
                zero = parts[i].empty();
                if (odd(t[i]))
                    for (int j = i + 1; j < p; ++j) flips += odd(s[j]);
            }
            if (!zero) a.products[x * N + y] = tensor(parts, R.normalize(flips % 2 ? -1 : 1));
        }
    {
        std::vector<AlgVec> parts(p, A.unit);
        a.unit = tensor(parts, R.normalize(1));
    }
    if (A.differential) {
        a.differential = SparseMatrix(N, N);
        for (std::size_t x = 0; x < N; ++x) {
            AlgVec acc;
            int before = 0;
            for (int i = 0; i < p; ++i) {
                std::vector<AlgVec> parts(p);
                for (int j = 0; j < p; ++j) parts[j] = A.basis_vector(tuples[x][j]);
                parts[i] = A.differential->col(tuples[x][i]);
                if (!parts[i].empty()) {
                    AlgVec term = tensor(parts, R.normalize(before % 2 ? -1 : 1));
                    acc.insert(acc.end(), term.begin(), term.end());
                }
                before += A.sign_degree(tuples[x][i]);
            }
            a.differential->col(x) = canonical(R, std::move(acc));
        }
    }
    // sigma(a1..ap) = (-1)^{|ap|(|a1|+..+|a(p-1)|)} (ap, a1, .., a(p-1))
    GroupAction act{GroupTable::cyclic(p), {}};
    std::vector<std::uint32_t> perm(N);
    std::vector<Scalar> sign(N);
    for (std::size_t x = 0; x < N; ++x) {
        auto t = tuples[x];
        int rest = 0;
        for (int i = 0; i + 1 < p; ++i) rest += A.sign_degree(t[i]);
        const bool neg = odd(t[p - 1]) && rest % 2;
        std::rotate(t.begin(), t.end() - 1, t.end());
        perm[x] = encode(t);
        sign[x] = R.normalize(neg ? -1 : 1);
    }
    SparseMatrix power = sparse_identity(N);
    for (int k = 0; k < p; ++k) {
        act.matrices.push_back(power);
        SparseMatrix next(N, N);
        for (std::size_t x = 0; x < N; ++x)
            for (const auto& e : power.col(x)) next.col(x).push_back({perm[e.index], R.mul(sign[e.index], e.value)});
        power = std::move(next);
    }
    a.action = std::move(act);
    if (!A.idempotents.empty()) {
        std::vector<std::uint32_t> idem;
        for (std::size_t x = 0; x < N; ++x)
            if (std::all_of(tuples[x].begin(), tuples[x].end(), [&](std::uint32_t v) {
                    return std::find(A.idempotents.begin(), A.idempotents.end(), v) != A.idempotents.end();
                }))
                idem.push_back(u32(x));
        a.idempotents = std::move(idem);
    }
    validate_algebra(a);
    return a;
}

Algebra smash_product(const Algebra& B) {
    require(B.action.has_value(), ErrorKind::Input, "smash product needs a group action");
    const GroupTable& G = B.action->group;
    const auto& M = B.action->matrices;
    const std::size_t d = B.dim(), g = static_cast<std::size_t>(G.size()), N = d * g;
    auto idx = [&](std::size_t b, std::size_t h) { return u32(b * g + h); };
    Algebra a;
    a.name = B.name + "#G" + std::to_string(g);
    a.ring = B.ring;
    a.sign_graded = B.sign_graded;
    a.truncation = B.truncation;
    a.basis.resize(N);
    a.products.resize(N * N);
    if (B.graded()) a.grading.resize(N);
    a.sectors = GroupGrading{G, std::vector<int>(N)};
    for (std::size_t b = 0; b < d; ++b)
        for (std::size_t h = 0; h < g; ++h) {
            const auto x = idx(b, h);
            a.basis[x] = d == 1 ? G.label(int(h)) : B.basis[b] + "#" + G.label(int(h));
            if (B.graded()) a.grading[x] = B.grading[b];
            a.sectors->degree[x] = int(h);
        }
    // (b1 g1)(b2 g2) = b1 (g1 . b2) g1 g2
    for (std::size_t b1 = 0; b1 < d; ++b1)
        for (std::size_t g1 = 0; g1 < g; ++g1)
            for (std::size_t b2 = 0; b2 < d; ++b2) {
                const AlgVec moved = B.multiply(B.basis_vector(b1), apply(B.ring, M[g1], B.basis_vector(b2)));
                for (std::size_t g2 = 0; g2 < g; ++g2) {
                    AlgVec& out = a.products[static_cast<std::size_t>(idx(b1, g1)) * N + idx(b2, g2)];
                    const auto gh = std::size_t(G.mul(int(g1), int(g2)));
                    for (const auto& e : moved) out.push_back({idx(e.index, gh), e.value});
                    out = canonical(a.ring, std::move(out));
                }
            }
    for (const auto& e : B.unit) a.unit.push_back({idx(e.index, G.identity()), e.value});
    if (B.differential) {
        a.differential = SparseMatrix(N, N);
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t h = 0; h < g; ++h)
                for (const auto& e : B.differential->col(b)) a.differential->col(idx(b, h)).push_back({idx(e.index, h), e.value});
        for (std::size_t x = 0; x < N; ++x) a.differential->col(x) = canonical(a.ring, std::move(a.differential->col(x)));
    }
    const bool fixed = std::all_of(B.idempotents.begin(), B.idempotents.end(), [&](std::uint32_t s) {
        for (const auto& m : M) {
            const AlgVec v = apply(B.ring, m, B.basis_vector(s));
            if (v.size() != 1 || v[0].index != s || v[0].value != 1) return false;
        }
        return true;
    });
    if (fixed && B.idempotents.size() > 1)
        for (auto s : B.idempotents) a.idempotents.push_back(idx(s, G.identity()));
    validate_algebra(a);
    return a;
}

Algebra direct_product(const Algebra& A, const Algebra& B) {
    require(A.ring == B.ring, ErrorKind::Input, "direct product needs a common ring");
    const std::size_t m = A.dim(), n = B.dim(), N = m + n;
    Algebra a;
    a.name = A.name + " x " + B.name;
    a.ring = A.ring;
    a.sign_graded = A.sign_graded || B.sign_graded;
    a.basis.resize(N);
    a.products.resize(N * N);
    const bool graded = A.graded() || B.graded();
    if (graded) a.grading.resize(N);
    for (std::size_t i = 0; i < m; ++i) {
        a.basis[i] = "(" + A.basis[i] + ",0)";
        if (graded) a.grading[i] = A.degree(i);
        for (std::size_t j = 0; j < m; ++j) a.products[i * N + j] = A.product(i, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
        a.basis[m + i] = "(0," + B.basis[i] + ")";
        if (graded) a.grading[m + i] = B.degree(i);
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& e : B.product(i, j)) a.products[(m + i) * N + m + j].push_back({u32(m + e.index), e.value});
    }
    a.unit = A.unit;
    for (const auto& e : B.unit) a.unit.push_back({u32(m + e.index), e.value});
    if (A.differential || B.differential) {
        a.differential = SparseMatrix(N, N);
        if (A.differential)
            for (std::size_t i = 0; i < m; ++i) a.differential->col(i) = A.differential->col(i);
        if (B.differential)
            for (std::size_t i = 0; i < n; ++i)
                for (const auto& e : B.differential->col(i)) a.differential->col(m + i).push_back({u32(m + e.index), e.value});
    }
    if (!A.idempotents.empty() && !B.idempotents.empty()) {
        a.idempotents = A.idempotents;
        for (auto s : B.idempotents) a.idempotents.push_back(u32(m + s));
    }
    if (A.flags.smooth && B.flags.smooth && *A.flags.smooth && *B.flags.smooth) {
        a.flags = {true, true, "product of smooth proper algebras"};
        a.flags.proper = A.flags.proper && B.flags.proper && *A.flags.proper && *B.flags.proper;
    }
    validate_algebra(a);
    return a;
}

Algebra truncated_polynomials(const Ring& ring, int variables, int max_degree) {
    require(variables >= 1 && variables <= 6, ErrorKind::Input, "polynomial algebra supports 1 to 6 variables");
    require(max_degree >= 0, ErrorKind::Input, "truncation degree must be non-negative");
    static const char* names = "xyzwuv";
    std::vector<std::vector<int>> monomials;
    for (int deg = 0; deg <= max_degree; ++deg) {
        std::vector<std::vector<int>> layer;
        std::vector<int> e(variables, 0);
        // compositions of deg into `variables` parts, descending lexicographic
        auto rec = [&](auto&& self, int i, int left) -> void {
            if (i == variables - 1) {
                e[i] = left;
                layer.push_back(e);
                return;
            }
            for (int k = left; k >= 0; --k) {
                e[i] = k;
                self(self, i + 1, left - k);
            }
        };
        rec(rec, 0, deg);
        monomials.insert(monomials.end(), layer.begin(), layer.end());
    }
    std::map<std::vector<int>, std::uint32_t> index;
    for (std::size_t i = 0; i < monomials.size(); ++i) index[monomials[i]] = u32(i);
    const std::size_t n = monomials.size();
    Algebra a;
    a.name = ring.name() + "[" + std::string(names, names + variables) + "]";
    a.ring = ring;
    a.truncation = max_degree;
    a.basis.resize(n);
    a.grading.resize(n);
    a.products.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string l;
        int deg = 0;
        for (int v = 0; v < variables; ++v) {
            const int k = monomials[i][v];
            deg += k;
            if (k > 0) l += std::string(1, names[v]) + (k > 1 ? "^" + std::to_string(k) : "");
        }
        a.basis[i] = l.empty() ? "1" : l;
        a.grading[i] = deg;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<int> s(variables);
            for (int v = 0; v < variables; ++v) s[v] = monomials[i][v] + monomials[j][v];
            auto it = index.find(s);
            if (it != index.end()) a.products[i * n + j] = {{it->second, Scalar(1)}};
        }
    }
    a.unit = {{0, Scalar(1)}};
    a.flags.smooth = true;
    a.flags.proper = false;
    a.flags.justification = "polynomial ring, truncated degree-wise";
    validate_algebra(a);
    return a;
}

Algebra dg_smoke_algebra(const Ring& ring) {
    Algebra a;
    a.name = "dg smoke";
    a.ring = ring;
    a.basis = {"1", "x", "y"};
    a.grading = {0, 0, 1};
    a.sign_graded = true;
    a.products.resize(9);
    for (std::uint32_t i = 0; i < 3; ++i) {
        a.products[i] = {{i, Scalar(1)}};
        a.products[3 * i] = {{i, Scalar(1)}};
    }
    a.unit = {{0, Scalar(1)}};
    a.differential = SparseMatrix(3, 3);
    a.differential->col(2) = {{1, Scalar(1)}};
    a.flags = {true, true, "quasi-isomorphic to the ground ring"};
    validate_algebra(a);
    return a;
}

Algebra with_trivial_action(Algebra a, const GroupTable& group) {
    a.action = GroupAction{group, std::vector<SparseMatrix>(group.size(), sparse_identity(a.dim()))};
    validate_algebra(a);
    return a;
}

bool is_commutative(const Algebra& a) {
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            const auto &x = a.product(i, j), &y = a.product(j, i);
            if (x.size() != y.size()) return false;
            for (std::size_t k = 0; k < x.size(); ++k)
                if (x[k].index != y[k].index || x[k].value != y[k].value) return false;
        }
    return true;
}

std::size_t center_dimension(const Algebra& a) {
    const std::size_t n = a.dim();
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& e : a.product(i, j)) t.push_back({j * n + e.index, i, e.value});
            for (const auto& e : a.product(j, i)) t.push_back({j * n + e.index, i, -e.value});
        }
    const SparseMatrix m = sparse_from_triplets(n * n, n, std::move(t), a.ring);
    return visit_field(a.ring, [&](const auto& f) { return n - rank_of(f, convert(f, m)); });
}

}  // namespace cyclotome
