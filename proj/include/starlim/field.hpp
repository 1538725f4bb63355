#pragma once

// Field abstraction for the exact matrix layer: the rationals and prime
// fields GF(p) with runtime modulus. Fields are small value types passed
// alongside matrices; elements are plain values with field-mediated ops.

#include <cstdint>
#include <stdexcept>

#include "primes.hpp"
#include "rational.hpp"

namespace starlim {

struct RationalField {
    using Elem = Rat;

    std::uint32_t characteristic() const { return 0; }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return v; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return 1 / a;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool operator==(const RationalField&) const = default;
};

struct PrimeField {
    std::uint32_t p = 2;

    explicit PrimeField(std::uint32_t modulus = 2) : p(modulus) {
        if (!is_prime_u64(p)) throw std::invalid_argument("PrimeField: modulus must be prime");
    }

    using Elem = std::uint64_t;

    std::uint32_t characteristic() const { return p; }
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem from_int(long long v) const {
        long long m = v % static_cast<long long>(p);
        if (m < 0) m += p;
        return static_cast<Elem>(m);
    }
    Elem add(Elem a, Elem b) const { return (a + b) % p; }
    Elem sub(Elem a, Elem b) const { return (a + p - b % p) % p; }
    Elem mul(Elem a, Elem b) const { return a * b % p; }
    Elem neg(Elem a) const { return (p - a % p) % p; }
    Elem inv(Elem a) const {
        if (a % p == 0) throw std::domain_error("division by zero");
        return detail::powmod_u64(a, p - 2, p);
    }
    bool is_zero(Elem a) const { return a % p == 0; }
    bool eq(Elem a, Elem b) const { return a % p == b % p; }
    bool operator==(const PrimeField&) const = default;
};

}  // namespace starlim
