#include "cyclotome/fdm/generalized.hpp"

#include "int_ops.hpp"

namespace cyclotome {

using namespace int_ops;

namespace {

void check_well_formed(const GeneralizedFDM& m) {
    require(m.b > m.a, ErrorKind::Validation, "filtration needs a < b");
    require(m.J >= 1, ErrorKind::Validation, "precision bound J must be positive");
    require(m.filtration.size() == static_cast<std::size_t>(m.b - m.a), ErrorKind::Validation,
            "one filtration step per index a..b-1");
    require(m.relations.rows() == m.dim || m.relations.cols() == 0, ErrorKind::Validation, "relations have wrong height");
    for (auto p : m.primes) {
        require(p >= 2 && is_prime(p), ErrorKind::Validation, "declared prime " + std::to_string(p) + " is not prime");
        for (int i = m.a; i < m.b; ++i)
            for (int j = 1; j <= m.J; ++j) {
                const auto& f = m.phi_at(p, i, j);
                require(f.cols() == m.step(i).cols() && (f.rows() == m.dim || f.cols() == 0), ErrorKind::Validation,
                        "phi(" + std::to_string(p) + "," + std::to_string(i) + "," + std::to_string(j) + ") has wrong shape");
            }
    }
    require(spans(Ring::integers(), m.step(m.a), m.relations, int_identity(m.dim)), ErrorKind::Validation,
            "F^a must equal M");
}

struct Piece {
    IntMat gens;
    IntMat phi;
};

// F^0 with phi^p_{0,j}, extended below a by powers of p
Piece piece_at_zero(const GeneralizedFDM& m, std::uint32_t p, int j) {
    const Ring R = Ring::cyclic(p, j);
    if (0 >= m.b) return {int_zero(m.dim, 0), int_zero(m.dim, 0)};
    if (0 < m.a) return {m.step(m.a), scaled(R, m.phi_at(p, m.a, j), power(p, m.a))};
    return {m.step(0), reduce_entries(R, m.phi_at(p, 0, j))};
}

struct Level {
    Presentation src, dst;
    IntMat map;
    IntMat cycles;  // generators of H^0 representatives in src coordinates
};

Level level(const GeneralizedFDM& m, std::uint32_t p, int j) {
    const Ring R = Ring::cyclic(p, j);
    Piece f0 = piece_at_zero(m, p, j);
    Level L;
    const std::size_t g = f0.gens.cols();
    IntMat k = g ? preimage_generators(Ring::integers(), f0.gens, m.relations) : int_zero(0, 0);
    L.src = {g, g ? reduce_entries(R, k) : int_zero(0, 0)};
    L.dst = {m.dim, reduce_entries(R, m.relations)};
    L.map = minus(R, reduce_entries(R, f0.gens), f0.phi);
    L.cycles = g ? preimage_generators(R, L.map, L.dst.relations) : int_zero(0, 0);
    return L;
}

ModuleDescriptor image_at(const Ring& R, const IntMat& cycles, const Presentation& src) {
    if (src.gens == 0) return ModuleDescriptor{R, 0, {}};
    return span_quotient(R, reduce_entries(R, cycles), reduce_entries(R, src.relations), src.gens);
}

}  // namespace

const IntMat& GeneralizedFDM::phi_at(std::uint32_t p, int i, int j) const {
    auto it = phi.find({p, i, j});
    require(it != phi.end(), ErrorKind::Validation,
            "missing phi(" + std::to_string(p) + "," + std::to_string(i) + "," + std::to_string(j) + ")");
    return it->second;
}

GeneralizedFDM generalized_tate(int i, const std::vector<std::uint32_t>& primes, int J) {
    GeneralizedFDM t;
    t.dim = 1;
    t.relations = int_zero(1, 0);
    t.a = i;
    t.b = i + 1;
    t.filtration = {int_identity(1)};
    t.primes = primes;
    t.J = J;
    for (auto p : primes)
        for (int j = 1; j <= J; ++j) t.phi[{p, i, j}] = int_identity(1);
    return t;
}

GFDMValidation gfdm_validate(const GeneralizedFDM& m) {
    check_well_formed(m);
    GFDMValidation v;
    const Ring Z = Ring::integers();
    for (auto p : m.primes) {
        v.per_prime[p] = true;
        auto fail = [&](int i, int j, std::string what) {
            v.per_prime[p] = false;
            v.failures.push_back({p, i, j, std::move(what)});
        };
        for (int j = 1; j <= m.J; ++j) {
            const Ring R = Ring::cyclic(p, j);
            const IntMat rel = reduce_entries(R, m.relations);
            for (int i = m.a; i < m.b; ++i) {
                const auto& g = m.step(i);
                const auto& f = m.phi_at(p, i, j);
                if (g.cols() == 0) continue;
                IntMat k = preimage_generators(Z, g, m.relations);
                if (k.cols() && !spans(R, int_zero(m.dim, 0), rel, reduce_entries(R, int_multiply(f, k))))
                    fail(i, j, "not well defined on the relations of F^i");
                if (j < m.J) {
                    const IntMat diff = minus(R, m.phi_at(p, i, j + 1), f);
                    if (!spans(R, int_zero(m.dim, 0), rel, diff)) fail(i, j + 1, "tower: differs mod p^j from level j");
                }
                if (i + 1 < m.b) {
                    IntMat c = express(Z, g, m.relations, m.step(i + 1), "filtration is not nested");
                    const IntMat diff = minus(R, int_multiply(f, c), scaled(R, m.phi_at(p, i + 1, j), p));
                    if (!spans(R, int_zero(m.dim, 0), rel, diff)) fail(i, j, "rescaling: phi_i on F^{i+1} != p phi_{i+1}");
                }
            }
        }
    }
    return v;
}

std::vector<ConeTower> tc_cone_tower(const GeneralizedFDM& m) {
    const auto v = gfdm_validate(m);
    require(v.ok(), ErrorKind::Validation,
            v.ok() ? std::string() : "generalized FDM fails validation at (" + std::to_string(v.failures[0].p) + "," +
                                         std::to_string(v.failures[0].i) + "," + std::to_string(v.failures[0].j) + ")");
    std::vector<ConeTower> out;
    for (auto p : m.primes) {
        ConeTower t;
        t.p = p;
        std::vector<Level> levels;
        for (int j = 1; j <= m.J; ++j) levels.push_back(level(m, p, j));
        for (int j = 1; j <= m.J; ++j) {
            const Ring R = Ring::cyclic(p, j);
            const Level& L = levels[static_cast<std::size_t>(j - 1)];
            TowerLevel tl;
            tl.j = j;
            tl.h0 = presented_homology(R, int_zero(L.src.gens, 0), L.src, L.map, L.dst);
            tl.h1 = presented_homology(R, L.map, L.dst, int_zero(0, L.dst.gens), Presentation::free(0));
            if (j > 1) {
                const Ring Rp = Ring::cyclic(p, j - 1);
                const Level& prev = levels[static_cast<std::size_t>(j - 2)];
                tl.h0_onto_previous = image_at(Rp, L.cycles, prev.src) ==
                                      image_at(Rp, prev.cycles, prev.src);
            }
            t.levels.push_back(std::move(tl));
        }
        for (int j = 1; j + 2 <= m.J; ++j) {
            const Ring R = Ring::cyclic(p, j);
            const Level& L = levels[static_cast<std::size_t>(j - 1)];
            const auto& top = levels.back();
            const auto& next = levels[levels.size() - 2];
            if (image_at(R, top.cycles, L.src) != image_at(R, next.cycles, L.src))
                t.mittag_leffler = false;
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace cyclotome
