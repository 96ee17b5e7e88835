#include "cyclotome/linalg/ring.hpp"

#include "cyclotome/linalg/error.hpp"

namespace cyclotome {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Ring::Ring(RingKind kind, std::uint32_t p, int k) : kind_(kind), p_(p), k_(k) {
    if (is_modular()) {
        mpz_ui_pow_ui(modulus_.get_mpz_t(), p, static_cast<unsigned long>(k));
    }
}

Ring Ring::prime_field(std::uint32_t p) {
    require(is_prime(p), ErrorKind::Input, "ring: " + std::to_string(p) + " is not prime");
    require(p < (1u << 31), ErrorKind::Input, "ring: prime too large");
    return Ring(RingKind::PrimeField, p, 1);
}

Ring Ring::cyclic(std::uint32_t p, int k) {
    require(k >= 1, ErrorKind::Input, "ring: precision must be >= 1");
    if (k == 1) return prime_field(p);
    require(is_prime(p), ErrorKind::Input, "ring: " + std::to_string(p) + " is not prime");
    require(k <= 60, ErrorKind::Input, "ring: precision too large");
    return Ring(RingKind::CyclicRing, p, k);
}

Ring Ring::integers() { return Ring(RingKind::Integers, 0, 0); }
Ring Ring::rationals() { return Ring(RingKind::Rationals, 0, 0); }

std::string Ring::name() const {
    switch (kind_) {
    case RingKind::PrimeField: return "F" + std::to_string(p_);
    case RingKind::CyclicRing: return "Z/" + std::to_string(p_) + "^" + std::to_string(k_);
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    }
    return "?";
}

Scalar Ring::normalize(const Scalar& a) const {
    switch (kind_) {
    case RingKind::Rationals: {
        Scalar r = a;
        r.canonicalize();
        return r;
    }
    case RingKind::Integers:
        require(a.get_den() == 1, ErrorKind::Input, "ring Z: non-integral value " + a.get_str());
        return a;
    default: {
        Integer num = a.get_num() % modulus_;
        if (num < 0) num += modulus_;
        if (a.get_den() != 1) {
            Integer inv;
            require(mpz_invert(inv.get_mpz_t(), a.get_den_mpz_t(), modulus_.get_mpz_t()) != 0,
                    ErrorKind::Input, "ring " + name() + ": denominator not invertible in " + a.get_str());
            num = (num * inv) % modulus_;
        }
        return Scalar(num);
    }
    }
}

bool Ring::is_unit(const Scalar& a) const {
    switch (kind_) {
    case RingKind::Rationals: return a != 0;
    case RingKind::Integers: return a == 1 || a == -1;
    default: {
        Integer n = normalize(a).get_num();
        return n % p_ != 0;
    }
    }
}

Scalar Ring::inverse(const Scalar& a) const {
    require(is_unit(a), ErrorKind::Input, "ring " + name() + ": " + a.get_str() + " is not a unit");
    if (kind_ == RingKind::Rationals) return Scalar(1) / a;
    if (kind_ == RingKind::Integers) return a;
    Integer inv;
    Integer n = normalize(a).get_num();
    mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), modulus_.get_mpz_t());
    return Scalar(inv);
}

int Ring::valuation(const Scalar& a) const {
    require(is_modular(), ErrorKind::UnsupportedRing, "valuation needs a modular ring");
    Integer n = normalize(a).get_num();
    if (n == 0) return k_;
    int v = 0;
    while (n % p_ == 0) {
        n /= p_;
        ++v;
    }
    return v;
}

Ring Ring::reduced(int j) const {
    require(is_modular(), ErrorKind::UnsupportedRing, "reduction needs Z/p^k");
    require(j >= 1 && j <= k_, ErrorKind::Input, "cannot raise precision by reduction");
    return cyclic(p_, j);
}

Scalar parse_scalar(const std::string& text) {
    Scalar r;
    require(!text.empty() && r.set_str(text, 10) == 0, ErrorKind::Input, "bad scalar '" + text + "'");
    require(r.get_den() != 0, ErrorKind::Input, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

std::string format_scalar(const Scalar& a) { return a.get_str(); }

}  // namespace cyclotome
