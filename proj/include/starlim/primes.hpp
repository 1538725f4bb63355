#pragma once

// 64-bit primality and factorization.
//
// is_prime_u64 is a deterministic Miller-Rabin over the witness set
// {2,3,5,7,11,13,17,19,23,29,31,37}, which decides primality for every
// n < 2^64. factor_u64 combines trial division by small primes with
// Brent's variant of Pollard rho for the remaining cofactor, so inputs
// with large prime factors (for example numerators of user-supplied
// ratios) still factor quickly.

#include <cstdint>
#include <map>
#include <numeric>

namespace starlim {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline std::uint64_t pollard_brent(std::uint64_t n) {
    // n is odd, composite, and has no factor below 100.
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1, q = 1, ys = 0;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        auto f = [n, c](std::uint64_t v) {
            return (mulmod_u64(v, v, n) + c) % n;
        };
        while (d == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && d == 1; k += m) {
                ys = y;
                std::uint64_t lim = std::min(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            // Backtrack one step at a time to recover the factor.
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

inline void factor_rec(std::uint64_t n, std::map<std::uint64_t, std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    std::uint64_t d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace detail

// Prime factorization of n >= 1 as prime -> exponent.
inline std::map<std::uint64_t, std::uint64_t> factor_u64(std::uint64_t n) {
    std::map<std::uint64_t, std::uint64_t> out;
    if (n == 0) return out;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull, 41ull, 43ull, 47ull,
                            53ull, 59ull, 61ull, 67ull, 71ull, 73ull, 79ull,
                            83ull, 89ull, 97ull}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    detail::factor_rec(n, out);
    return out;
}

}  // namespace starlim
