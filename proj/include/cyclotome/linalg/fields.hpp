#pragma once

// Arithmetic policies used by the kernels. Each policy has a value_type and
// add/sub/neg/mul; the field policies also have inv.

#include <cstdint>
#include <utility>

#include "cyclotome/linalg/error.hpp"
#include "cyclotome/linalg/ring.hpp"

namespace cyclotome {

struct Fp {
    using value_type = std::uint32_t;
    static constexpr bool is_field = true;

    std::uint32_t p = 2;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    static bool is_zero(value_type a) { return a == 0; }
    value_type add(value_type a, value_type b) const {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p - b); }
    value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p);
    }
    value_type inv(value_type a) const {
        std::uint64_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<value_type>(r);
    }
    value_type from_int(long v) const {
        long r = v % static_cast<long>(p);
        return static_cast<value_type>(r < 0 ? r + p : r);
    }
    value_type from_scalar(const Scalar& s) const {
        Integer m = p;
        Integer num = s.get_num() % m;
        if (num < 0) num += m;
        value_type r = static_cast<value_type>(num.get_ui());
        if (s.get_den() != 1) {
            Integer den = s.get_den() % m;
            require(den != 0, ErrorKind::Input, "denominator divisible by p");
            r = mul(r, inv(static_cast<value_type>(den.get_ui())));
        }
        return r;
    }
    Scalar to_scalar(value_type a) const { return Scalar(static_cast<unsigned long>(a)); }
};

struct Qf {
    using value_type = mpq_class;
    static constexpr bool is_field = true;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    static bool is_zero(const value_type& a) { return sgn(a) == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const { return value_type(1) / a; }
    value_type from_int(long v) const { return value_type(v); }
    value_type from_scalar(const Scalar& s) const { return s; }
    Scalar to_scalar(const value_type& a) const { return a; }
};

// Prime field with p < 2^62; used for modular rank over Q.
struct Fp64 {
    using value_type = std::uint64_t;
    static constexpr bool is_field = true;

    std::uint64_t p = 2305843009213693951ull;  // 2^61 - 1

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    static bool is_zero(value_type a) { return a == 0; }
    value_type add(value_type a, value_type b) const {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p - b); }
    value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % p);
    }
    value_type inv(value_type a) const {
        value_type r = 1, b = a;
        for (std::uint64_t e = p - 2; e; e >>= 1) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
        }
        return r;
    }
    value_type from_int(long v) const {
        __int128 r = static_cast<__int128>(v) % static_cast<__int128>(p);
        return static_cast<value_type>(r < 0 ? r + p : r);
    }
};

// Z/p^k with p^k < 2^62.
struct Zpk {
    using value_type = std::uint64_t;
    static constexpr bool is_field = false;

    std::uint64_t m = 4;

    value_type zero() const { return 0; }
    value_type one() const { return 1 % m; }
    static bool is_zero(value_type a) { return a == 0; }
    value_type add(value_type a, value_type b) const {
        std::uint64_t s = a + b;
        return s >= m ? s - m : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (m - b); }
    value_type neg(value_type a) const { return a == 0 ? 0 : m - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % m);
    }
    value_type from_int(long v) const {
        __int128 r = static_cast<__int128>(v) % static_cast<__int128>(m);
        return static_cast<value_type>(r < 0 ? r + m : r);
    }
    value_type from_scalar(const Scalar& s) const {
        Integer mm;
        mpz_set_ui(mm.get_mpz_t(), m);
        Integer num = s.get_num() % mm;
        if (num < 0) num += mm;
        if (s.get_den() != 1) {
            Integer inv;
            require(mpz_invert(inv.get_mpz_t(), s.get_den_mpz_t(), mm.get_mpz_t()) != 0, ErrorKind::Input,
                    "denominator not invertible");
            num = num * inv % mm;
        }
        return mpz_get_ui(num.get_mpz_t());
    }
    Scalar to_scalar(value_type a) const { return Scalar(static_cast<unsigned long>(a)); }
};

struct Zz {
    using value_type = mpz_class;
    static constexpr bool is_field = false;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    static bool is_zero(const value_type& a) { return sgn(a) == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type from_int(long v) const { return value_type(v); }
    value_type from_scalar(const Scalar& s) const {
        require(s.get_den() == 1, ErrorKind::Input, "non-integral coefficient");
        return s.get_num();
    }
    Scalar to_scalar(const value_type& a) const { return Scalar(a); }
};

// Canonical Scalars of an arbitrary ring; slow, used for construction and validation.
struct RingScalar {
    using value_type = Scalar;
    static constexpr bool is_field = false;

    Ring ring;

    value_type zero() const { return 0; }
    value_type one() const { return ring.normalize(1); }
    static bool is_zero(const value_type& a) { return sgn(a) == 0; }
    value_type add(const value_type& a, const value_type& b) const { return ring.add(a, b); }
    value_type sub(const value_type& a, const value_type& b) const { return ring.sub(a, b); }
    value_type neg(const value_type& a) const { return ring.neg(a); }
    value_type mul(const value_type& a, const value_type& b) const { return ring.mul(a, b); }
    value_type from_int(long v) const { return ring.normalize(v); }
    value_type from_scalar(const Scalar& s) const { return ring.normalize(s); }
    Scalar to_scalar(const value_type& a) const { return a; }
};

template <class Fn>
decltype(auto) visit_field(const Ring& ring, Fn&& fn) {
    switch (ring.kind()) {
    case RingKind::PrimeField: return std::forward<Fn>(fn)(Fp{ring.prime()});
    case RingKind::Rationals: return std::forward<Fn>(fn)(Qf{});
    default: fail(ErrorKind::UnsupportedRing, "operation needs a field, got " + ring.name());
    }
}

template <class Fn>
decltype(auto) visit_coefficients(const Ring& ring, Fn&& fn) {
    switch (ring.kind()) {
    case RingKind::PrimeField: return std::forward<Fn>(fn)(Fp{ring.prime()});
    case RingKind::Rationals: return std::forward<Fn>(fn)(Qf{});
    case RingKind::CyclicRing:
        require(ring.modulus() < (Integer(1) << 62), ErrorKind::Resource, "modulus too large");
        return std::forward<Fn>(fn)(Zpk{mpz_get_ui(ring.modulus().get_mpz_t())});
    case RingKind::Integers: return std::forward<Fn>(fn)(Zz{});
    }
    fail(ErrorKind::Internal, "unknown ring kind");
}

}  // namespace cyclotome
