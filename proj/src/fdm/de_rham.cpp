#include "cyclotome/fdm/de_rham.hpp"

#include <bit>
#include <functional>
#include <numeric>

#include "int_ops.hpp"

namespace cyclotome {

using namespace int_ops;

namespace {

using Form = std::map<FormTerm, Integer>;

void compositions(int variables, int total, Monomial& cur, int t, std::vector<Monomial>& out) {
    if (t + 1 == variables) {
        cur[static_cast<std::size_t>(t)] = total;
        out.push_back(cur);
        return;
    }
    for (int e = total; e >= 0; --e) {
        cur[static_cast<std::size_t>(t)] = e;
        compositions(variables, total - e, cur, t + 1, out);
    }
}

void add_to(Form& f, const FormTerm& t, const Integer& c) {
    if (c == 0) return;
    auto [it, fresh] = f.emplace(t, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) f.erase(it);
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Monomial e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto& slot = out[e];
            slot += ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Polynomial poly_pow(const Polynomial& a, int e, int variables) {
    Polynomial r{{Monomial(static_cast<std::size_t>(variables), 0), Integer(1)}};
    for (int i = 0; i < e; ++i) r = poly_mul(r, a);
    return r;
}

// sign of dx_i inserted in front of the sorted wedge `mask`
int wedge_sign(int i, unsigned mask) { return std::popcount(mask & ((1u << i) - 1)) % 2 ? -1 : 1; }

// d(x^e dx_S) = sum_t e_t x^{e - 1_t} dx_t ^ dx_S
Form exterior_d(const FormTerm& t) {
    Form out;
    for (std::size_t v = 0; v < t.exps.size(); ++v) {
        if (t.exps[v] == 0 || (t.mask >> v & 1u)) continue;
        FormTerm n{t.exps, t.mask | (1u << v)};
        --n.exps[v];
        add_to(out, n, Integer(t.exps[v] * wedge_sign(static_cast<int>(v), t.mask)));
    }
    return out;
}

struct Lift {
    int variables;
    std::vector<Polynomial> image;                 // F_t
    std::vector<std::vector<Polynomial>> partial;  // dF_t / dx_s
};

Lift make_lift(const DeRhamData& D) {
    Lift L{D.variables, {}, {}};
    for (int t = 0; t < D.variables; ++t) {
        Polynomial f;
        if (D.lift.empty()) {
            Monomial e(static_cast<std::size_t>(D.variables), 0);
            e[static_cast<std::size_t>(t)] = static_cast<int>(D.p);
            f[e] = 1;
        } else {
            f = D.lift[static_cast<std::size_t>(t)];
        }
        std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
        for (const auto& [e, c] : f) {
            require(static_cast<int>(e.size()) == D.variables, ErrorKind::Validation, "lift monomial has wrong arity");
            require(std::accumulate(e.begin(), e.end(), 0) == static_cast<int>(D.p), ErrorKind::Validation,
                    "Frobenius lift of x" + std::to_string(t + 1) + " is not homogeneous of degree p");
            const bool frob = e[static_cast<std::size_t>(t)] == static_cast<int>(D.p);
            const Integer expected = frob ? 1 : 0;
            require((c - expected) % D.p == 0, ErrorKind::Validation,
                    "lift of x" + std::to_string(t + 1) + " does not reduce to Frobenius mod p");
        }
        Monomial fe(static_cast<std::size_t>(D.variables), 0);
        fe[static_cast<std::size_t>(t)] = static_cast<int>(D.p);
        require(f.count(fe), ErrorKind::Validation, "lift of x" + std::to_string(t + 1) + " does not reduce to Frobenius mod p");
        std::vector<Polynomial> row;
        for (int s = 0; s < D.variables; ++s) {
            Polynomial g;
            for (const auto& [e, c] : f) {
                if (e[static_cast<std::size_t>(s)] == 0) continue;
                Monomial n = e;
                --n[static_cast<std::size_t>(s)];
                g[n] += c * e[static_cast<std::size_t>(s)];
            }
            std::erase_if(g, [](const auto& kv) { return kv.second == 0; });
            row.push_back(std::move(g));
        }
        L.image.push_back(std::move(f));
        L.partial.push_back(std::move(row));
    }
    return L;
}

// Fr^*(x^e dx_S) = prod F_t^{e_t} * wedge_{s in S} dF_s
Form pull_back(const Lift& L, const FormTerm& t) {
    Polynomial coeff = {{Monomial(static_cast<std::size_t>(L.variables), 0), Integer(1)}};
    for (int v = 0; v < L.variables; ++v) coeff = poly_mul(coeff, poly_pow(L.image[static_cast<std::size_t>(v)], t.exps[static_cast<std::size_t>(v)], L.variables));
    Form acc;
    acc[{Monomial(static_cast<std::size_t>(L.variables), 0), 0u}] = 1;
    for (int s = L.variables - 1; s >= 0; --s) {
        if (!(t.mask >> s & 1u)) continue;
        // dF_s ^ acc, built right to left so the wedge order is ascending in S
        Form next;
        for (const auto& [term, c] : acc)
            for (int v = 0; v < L.variables; ++v) {
                if (term.mask >> v & 1u) continue;
                for (const auto& [e, g] : L.partial[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)]) {
                    FormTerm n{term.exps, term.mask | (1u << v)};
                    for (std::size_t i = 0; i < n.exps.size(); ++i) n.exps[i] += e[i];
                    add_to(next, n, c * g * wedge_sign(v, term.mask));
                }
            }
        acc = std::move(next);
    }
    Form out;
    for (const auto& [term, c] : acc)
        for (const auto& [e, g] : coeff) {
            FormTerm n{term.exps, term.mask};
            for (std::size_t i = 0; i < n.exps.size(); ++i) n.exps[i] += e[i];
            add_to(out, n, c * g);
        }
    return out;
}

IntMat matrix_of(const std::vector<FormTerm>& src, const std::vector<FormTerm>& dst,
                 const std::function<Form(const FormTerm&)>& fn) {
    std::map<FormTerm, std::size_t> row;
    for (std::size_t i = 0; i < dst.size(); ++i) row[dst[i]] = i;
    IntMat m = int_zero(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& [t, c] : fn(src[j])) {
            auto it = row.find(t);
            require(it != row.end(), ErrorKind::Internal, "de Rham: form outside the target basis");
            m(it->second, j) = c;
        }
    return m;
}

int valuation(Integer x, std::uint32_t p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

struct Complexes {
    // basis[(q, d)] and d-matrices dmat[(q, d)] : q-forms -> (q+1)-forms
    std::map<std::pair<int, int>, std::vector<FormTerm>> basis;
    std::map<std::pair<int, int>, IntMat> dmat;
};

Complexes build(const DeRhamData& D) {
    require(D.variables >= 1 && D.variables <= 8, ErrorKind::Input, "de Rham: 1..8 variables supported");
    require(D.window >= 0, ErrorKind::Input, "de Rham: negative window");
    Complexes c;
    for (int d = 0; d <= D.window; ++d)
        for (int q = 0; q <= D.variables; ++q) c.basis[{q, d}] = form_basis(D.variables, q, d);
    for (int d = 0; d <= D.window; ++d)
        for (int q = 0; q < D.variables; ++q)
            c.dmat[{q, d}] = matrix_of(c.basis[{q, d}], c.basis[{q + 1, d}], exterior_d);
    return c;
}

ModuleDescriptor cohomology_at(const Ring& R, const Complexes& c, int q, int d, int variables) {
    const auto& b = c.basis.at({q, d});
    const IntMat in = q > 0 ? reduce_entries(R, c.dmat.at({q - 1, d})) : int_zero(b.size(), 0);
    const IntMat out = q < variables ? reduce_entries(R, c.dmat.at({q, d})) : int_zero(0, b.size());
    return presented_homology(R, in, Presentation::free(b.size()), out, Presentation::free(out.rows()));
}

}  // namespace

std::vector<FormTerm> form_basis(int variables, int q, int d) {
    std::vector<FormTerm> out;
    const int poly = d - q;
    if (poly < 0 || q > variables) return out;
    std::vector<Monomial> monos;
    Monomial cur(static_cast<std::size_t>(variables), 0);
    compositions(variables, poly, cur, 0, monos);
    for (unsigned mask = 0; mask < (1u << variables); ++mask) {
        if (std::popcount(mask) != q) continue;
        for (const auto& m : monos) out.push_back({m, mask});
    }
    return out;
}

DeRhamFDM de_rham_fdm(const DeRhamData& D) {
    require(is_prime(D.p), ErrorKind::Input, "de Rham: p must be prime");
    require(D.k >= 1, ErrorKind::Input, "de Rham: precision must be positive");
    require(D.lift.empty() || static_cast<int>(D.lift.size()) == D.variables, ErrorKind::Input,
            "de Rham: one lift per variable");
    const Lift L = make_lift(D);
    const Complexes c = build(D);
    const Ring R = Ring::cyclic(D.p, D.k);
    DeRhamFDM out;
    out.data = D;
    for (int d = 0; d <= D.window; ++d)
        for (int q = 0; q <= D.variables; ++q) out.cohomology[{q, d}] = cohomology_at(R, c, q, d, D.variables);
    for (int d = 0; static_cast<long>(D.p) * d <= D.window; ++d)
        for (int q = 0; q <= D.variables; ++q) {
            const int e = static_cast<int>(D.p) * d;
            IntMat fr = matrix_of(c.basis.at({q, d}), c.basis.at({q, e}), [&](const FormTerm& t) { return pull_back(L, t); });
            const Integer scale = power(D.p, q);
            for (std::size_t i = 0; i < fr.rows(); ++i)
                for (std::size_t j = 0; j < fr.cols(); ++j) {
                    if (fr(i, j) == 0) continue;
                    const int v = valuation(fr(i, j), D.p);
                    auto [it, fresh] = out.min_valuation.emplace(q, v);
                    if (!fresh) it->second = std::min(it->second, v);
                    if (v < q) out.divisible = false;
                    fr(i, j) /= scale;  // exact when divisible; flagged otherwise
                }
            out.phi[{q, d}] = std::move(fr);
        }
    return out;
}

bool CartierModPReport::ok() const {
    if (!off_multiples_vanish || inconclusive) return false;
    for (const auto& e : entries)
        if (!e.ok()) return false;
    return true;
}

CartierModPReport cartier_mod_p_check(const DeRhamData& D) {
    DeRhamFDM fdm = de_rham_fdm(D);
    require(fdm.divisible, ErrorKind::Validation, "Frobenius pull-back is not divisible by p^q");
    const Complexes c = build(D);
    const Ring Fp = Ring::prime_field(D.p);
    CartierModPReport rep;
    rep.inconclusive = D.window < static_cast<int>(D.p);
    for (int e = 0; e <= D.window; ++e) {
        if (e % static_cast<int>(D.p) == 0) continue;
        for (int q = 0; q <= D.variables; ++q)
            if (!cohomology_at(Fp, c, q, e, D.variables).is_zero()) rep.off_multiples_vanish = false;
    }
    for (const auto& [key, phi] : fdm.phi) {
        const auto [q, d] = key;
        const int e = static_cast<int>(D.p) * d;
        CartierEntry ent;
        ent.q = q;
        ent.d = d;
        ent.source = phi.cols();
        ent.target = cohomology_at(Fp, c, q, e, D.variables).rank;
        const IntMat img = reduce_entries(Fp, phi);
        if (q < D.variables && img.cols() && !all_zero(Fp, int_multiply(c.dmat.at({q, e}), img))) ent.closed = false;
        const IntMat bounds = q > 0 ? reduce_entries(Fp, c.dmat.at({q - 1, e})) : int_zero(img.rows(), 0);
        ent.rank = img.rows() ? subquotient(Fp, cat(img, bounds, img.rows()), bounds).rank : 0;
        rep.entries.push_back(ent);
    }
    return rep;
}

}  // namespace cyclotome
