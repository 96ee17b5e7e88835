#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace cyclotome {

using Scalar = mpq_class;
using Integer = mpz_class;

enum class RingKind { PrimeField, CyclicRing, Integers, Rationals };

// Coefficient ring descriptor. Elements are carried as Scalar in canonical
// form: residues in [0, p^k) for the modular rings, integers for Z.
class Ring {
public:
    Ring() = default;  // the rationals
    static Ring prime_field(std::uint32_t p);
    static Ring cyclic(std::uint32_t p, int k);  // k == 1 gives the prime field
    static Ring integers();
    static Ring rationals();

    RingKind kind() const noexcept { return kind_; }
    std::uint32_t prime() const noexcept { return p_; }
    int precision() const noexcept { return k_; }
    const Integer& modulus() const noexcept { return modulus_; }
    bool is_field() const noexcept { return kind_ == RingKind::PrimeField || kind_ == RingKind::Rationals; }
    bool is_modular() const noexcept { return kind_ == RingKind::PrimeField || kind_ == RingKind::CyclicRing; }
    std::string name() const;

    Scalar normalize(const Scalar& a) const;
    Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
    Scalar neg(const Scalar& a) const { return normalize(-a); }
    bool is_unit(const Scalar& a) const;
    Scalar inverse(const Scalar& a) const;
    // p-adic valuation of a residue in Z/p^k (k for zero); only for modular rings.
    int valuation(const Scalar& a) const;

    // Reduction Z/p^k -> Z/p^j, j <= k.
    Ring reduced(int j) const;

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_ && a.k_ == b.k_;
    }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

private:
    Ring(RingKind kind, std::uint32_t p, int k);

    RingKind kind_ = RingKind::Rationals;
    std::uint32_t p_ = 0;
    int k_ = 0;
    Integer modulus_ = 0;
};

bool is_prime(std::uint64_t n);

// Parses "3", "-2", "1/2" into a Scalar (no ring reduction).
Scalar parse_scalar(const std::string& text);
std::string format_scalar(const Scalar& a);

}  // namespace cyclotome
