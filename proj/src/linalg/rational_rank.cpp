#include <algorithm>

#include "cyclotome/linalg/kernels.hpp"

namespace cyclotome {

namespace {

using Residue = std::uint64_t;
using ResidueVec = SparseVec<Residue>;
using IntVec = SparseVec<mpz_class>;

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Column scaled by the lcm of its denominators.
IntVec integral(const SparseVec<mpq_class>& c) {
    mpz_class l = 1;
    for (const auto& e : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.value.get_den_mpz_t());
    IntVec out;
    out.reserve(c.size());
    for (const auto& e : c) out.push_back({e.index, e.value.get_num() * (l / e.value.get_den())});
    return out;
}

ResidueVec reduce_mod(const IntVec& c, std::uint64_t p) {
    ResidueVec out;
    out.reserve(c.size());
    for (const auto& e : c) {
        const Residue r = mpz_fdiv_ui(e.value.get_mpz_t(), p);
        if (r) out.push_back({e.index, r});
    }
    return out;
}

// n/d with |n|, d below sqrt(p/2) and n = a d mod p.
std::optional<mpq_class> reconstruct(Residue a, std::uint64_t p) {
    constexpr __int128 bound = 1073741823;
    __int128 r0 = p, r1 = a, t0 = 0, t1 = 1;
    while (r1 > bound) {
        const __int128 q = r0 / r1;
        r0 = std::exchange(r1, r0 - q * r1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (t1 == 0 || t1 > bound || -t1 > bound) return std::nullopt;
    if (t1 < 0) {
        t1 = -t1;
        r1 = -r1;
    }
    mpq_class q(static_cast<long>(r1), static_cast<long>(t1));
    if (q.get_den() != static_cast<long>(t1)) return std::nullopt;
    q.canonicalize();
    return q;
}

// Checks sum_i x_i col_i = 0 over Q for the lift of a mod-p relation x.
bool lifts(const std::vector<IntVec>& cols, const ResidueVec& relation, std::uint64_t p) {
    std::vector<mpq_class> x;
    x.reserve(relation.size());
    mpz_class l = 1;
    for (const auto& e : relation) {
        auto q = reconstruct(e.value, p);
        if (!q) return false;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q->get_den_mpz_t());
        x.push_back(std::move(*q));
    }
    std::vector<Entry<mpz_class>> sum;
    for (std::size_t k = 0; k < relation.size(); ++k) {
        const mpz_class c = x[k].get_num() * (l / x[k].get_den());
        for (const auto& e : cols[relation[k].index]) sum.push_back({e.index, c * e.value});
    }
    std::sort(sum.begin(), sum.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < sum.size();) {
        mpz_class acc = 0;
        std::size_t j = i;
        for (; j < sum.size() && sum[j].index == sum[i].index; ++j) acc += sum[j].value;
        if (sgn(acc) != 0) return false;
        i = j;
    }
    return true;
}

}  // namespace

std::optional<std::size_t> rank_rational_modular(const SparseMat<mpq_class>& m) {
    const Fp64 f;
    std::vector<IntVec> cols(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) cols[j] = integral(m.col(j));

    // Echelon mod p; each stored row remembers which columns produced it.
    std::vector<std::size_t> pivot_of(m.rows(), npos);
    std::vector<ResidueVec> rows, combos, relations;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        ResidueVec v = reduce_mod(cols[j], f.p);
        ResidueVec combo{{static_cast<std::uint32_t>(j), 1}};
        while (!v.empty()) {
            const std::size_t r = pivot_of[v.front().index];
            if (r == npos) break;
            const Residue a = f.neg(v.front().value);
            v = axpy(f, v, a, rows[r]);
            combo = axpy(f, combo, a, combos[r]);
        }
        if (v.empty()) {
            relations.push_back(std::move(combo));
            continue;
        }
        const Residue s = f.inv(v.front().value);
        for (auto& e : v) e.value = f.mul(e.value, s);
        for (auto& e : combo) e.value = f.mul(e.value, s);
        pivot_of[v.front().index] = rows.size();
        rows.push_back(std::move(v));
        combos.push_back(std::move(combo));
    }

    std::vector<char> ok(relations.size(), 0);
    const long n = static_cast<long>(relations.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long k = 0; k < n; ++k) ok[k] = lifts(cols, relations[k], f.p);
    if (std::find(ok.begin(), ok.end(), 0) != ok.end()) return std::nullopt;
    return rows.size();
}

}  // namespace cyclotome
