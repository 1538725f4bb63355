#pragma once

// Supernatural (Steinitz) numbers: formal products prod p^e(p) over primes
// with exponents in {0,1,2,...} or infinity. Canonical representation keeps
// a map of strictly positive finite exponents disjoint from the set of
// primes with infinite exponent.
//
// The key relation is rational ratio membership: a positive rational m/n
// lies in N/N' when n*N = m*N' as supernatural numbers. Equivalently, after
// cancelling the finite ratio witness, m/n must be supported on the common
// set of infinite-exponent primes. That test only ever divides by known
// primes, so it stays exact without factoring large integers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "primes.hpp"
#include "rational.hpp"

namespace starlim {

struct Supernatural {
    std::map<std::uint64_t, std::uint64_t> finite;  // prime -> exponent > 0
    std::set<std::uint64_t> infinite;               // primes with exponent inf

    bool operator==(const Supernatural&) const = default;
};

inline Supernatural sn_one() { return {}; }

inline Supernatural sn_make(std::map<std::uint64_t, std::uint64_t> finite,
                            std::set<std::uint64_t> infinite) {
    for (auto& [p, e] : finite) {
        if (!is_prime_u64(p)) throw SchemaError("supernatural: " + std::to_string(p) + " is not prime");
        if (e == 0) throw SchemaError("supernatural: zero exponent for prime " + std::to_string(p));
        if (infinite.count(p)) throw SchemaError("supernatural: prime " + std::to_string(p) + " both finite and infinite");
    }
    for (auto p : infinite) {
        if (!is_prime_u64(p)) throw SchemaError("supernatural: " + std::to_string(p) + " is not prime");
    }
    return Supernatural{std::move(finite), std::move(infinite)};
}

inline Supernatural sn_from_u64(std::uint64_t n) {
    if (n == 0) throw SchemaError("supernatural: integer value must be >= 1");
    return Supernatural{factor_u64(n), {}};
}

inline Supernatural sn_mul(const Supernatural& a, const Supernatural& b) {
    Supernatural r = a;
    r.infinite.insert(b.infinite.begin(), b.infinite.end());
    for (const auto& [p, e] : b.finite) r.finite[p] += e;
    for (auto p : r.infinite) r.finite.erase(p);
    return r;
}

// a | b componentwise (infinite exponents absorb everything).
inline bool sn_divides(const Supernatural& a, const Supernatural& b) {
    for (auto p : a.infinite)
        if (!b.infinite.count(p)) return false;
    for (const auto& [p, e] : a.finite) {
        if (b.infinite.count(p)) continue;
        auto it = b.finite.find(p);
        if (it == b.finite.end() || it->second < e) return false;
    }
    return true;
}

inline bool sn_is_finite(const Supernatural& a) { return a.infinite.empty(); }

inline Int sn_value(const Supernatural& a) {
    if (!sn_is_finite(a)) throw std::invalid_argument("supernatural: value of an infinite number");
    Int v = 1;
    for (const auto& [p, e] : a.finite)
        for (std::uint64_t i = 0; i < e; ++i) v *= p;
    return v;
}

// Two supernatural numbers generate the same rational-multiple class
// exactly when their infinite-exponent prime sets coincide.
inline bool q_equivalent(const Supernatural& a, const Supernatural& b) {
    return a.infinite == b.infinite;
}

// The unique rational w with a = w * b modulo the common infinite primes.
inline Rat ratio_witness(const Supernatural& a, const Supernatural& b) {
    if (!q_equivalent(a, b))
        throw std::invalid_argument("ratio_witness: numbers are not q-equivalent");
    Int n = 1, d = 1;
    std::set<std::uint64_t> primes;
    for (const auto& [p, e] : a.finite) primes.insert(p);
    for (const auto& [p, e] : b.finite) primes.insert(p);
    for (auto p : primes) {
        auto ita = a.finite.find(p);
        auto itb = b.finite.find(p);
        std::uint64_t ea = ita == a.finite.end() ? 0 : ita->second;
        std::uint64_t eb = itb == b.finite.end() ? 0 : itb->second;
        Int pk = p;
        if (ea > eb) {
            for (std::uint64_t i = 1; i < ea - eb; ++i) pk *= p;
            n *= pk;
        } else if (eb > ea) {
            for (std::uint64_t i = 1; i < eb - ea; ++i) pk *= p;
            d *= pk;
        }
    }
    return Rat(n, d);
}

namespace detail {

// Removes every factor of p from v, returning the multiplicity removed.
inline std::uint64_t strip_prime(Int& v, std::uint64_t p) {
    std::uint64_t count = 0;
    Int q, r;
    for (;;) {
        boost::multiprecision::divide_qr(v, Int(p), q, r);
        if (!r.is_zero()) return count;
        v = q;
        ++count;
    }
}

}  // namespace detail

// Decides q in a/b, i.e. a = q*b: den(q)*a and num(q)*b must agree. After
// cancelling the finite witness the leftover ratio must be supported on the
// common infinite primes. Returns the infinite-prime adjustment g (so that
// q = ratio_witness(a,b) * g) when membership holds.
inline std::optional<Rat> ratio_member_witness(const Rat& q, const Supernatural& a,
                                               const Supernatural& b) {
    if (q <= 0) throw std::invalid_argument("ratio membership: ratio must be positive");
    if (!q_equivalent(a, b)) return std::nullopt;
    Rat w = ratio_witness(a, b);
    Int x = num(q) * den(w);  // numerator of q/w
    Int y = den(q) * num(w);  // denominator of q/w
    Int gn = 1, gd = 1;
    for (auto p : a.infinite) {
        std::uint64_t en = detail::strip_prime(x, p);
        std::uint64_t ed = detail::strip_prime(y, p);
        Int pk = 1;
        for (std::uint64_t i = 0; i < (en > ed ? en - ed : ed - en); ++i) pk *= p;
        if (en > ed)
            gn *= pk;
        else
            gd *= pk;
    }
    Int g = boost::multiprecision::gcd(x, y);
    x /= g;
    y /= g;
    if (x != 1 || y != 1) return std::nullopt;
    return Rat(gn, gd);
}

inline bool rational_ratio_member(const Rat& q, const Supernatural& a,
                                  const Supernatural& b) {
    return ratio_member_witness(q, a, b).has_value();
}

// ---------------------------------------------------------------------------
// Text form: "2^inf * 3^2 * 5", with "1" for the empty product.

inline std::string sn_str(const Supernatural& a) {
    if (a.finite.empty() && a.infinite.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    std::map<std::uint64_t, std::optional<std::uint64_t>> all;
    for (auto p : a.infinite) all[p] = std::nullopt;
    for (const auto& [p, e] : a.finite) all[p] = e;
    for (const auto& [p, e] : all) {
        if (!first) os << " * ";
        first = false;
        os << p;
        if (!e)
            os << "^inf";
        else if (*e > 1)
            os << '^' << *e;
    }
    return os.str();
}

inline Supernatural sn_parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw SchemaError("supernatural: empty text");
    if (s == "1") return sn_one();
    std::map<std::uint64_t, std::uint64_t> finite;
    std::set<std::uint64_t> infinite;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('*', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? s.size() : next + 1;
        if (tok.empty()) throw SchemaError("supernatural: empty factor in '" + text + "'");
        std::uint64_t p = 0;
        std::string expo;
        auto caret = tok.find('^');
        std::string base = tok.substr(0, caret);
        if (caret != std::string::npos) {
            expo = tok.substr(caret + 1);
            if (expo.empty()) throw SchemaError("supernatural: missing exponent in '" + tok + "'");
        }
        try {
            std::size_t used = 0;
            p = std::stoull(base, &used);
            if (used != base.size()) throw std::invalid_argument(base);
        } catch (const std::exception&) {
            throw SchemaError("supernatural: bad factor '" + tok + "'");
        }
        if (!is_prime_u64(p)) throw SchemaError("supernatural: " + base + " is not prime");
        if (expo == "inf") {
            infinite.insert(p);
        } else {
            std::uint64_t e = 1;
            if (!expo.empty()) {
                try {
                    std::size_t used = 0;
                    e = std::stoull(expo, &used);
                    if (used != expo.size()) throw std::invalid_argument(expo);
                } catch (const std::exception&) {
                    throw SchemaError("supernatural: bad exponent in '" + tok + "'");
                }
                if (e == 0) throw SchemaError("supernatural: zero exponent in '" + tok + "'");
            }
            finite[p] += e;
        }
    }
    for (auto p : infinite) finite.erase(p);
    return Supernatural{std::move(finite), std::move(infinite)};
}

// Supernatural number of an eventually periodic product s_1*s_2*...: primes
// dividing the period product acquire infinite exponent, everything else
// accumulates from the prefix only.
inline Supernatural sn_from_terms(const std::vector<std::uint64_t>& prefix,
                                  const std::vector<std::uint64_t>& period) {
    Supernatural r;
    for (auto t : period) {
        if (t == 0) throw std::invalid_argument("sn_from_terms: zero term");
        for (const auto& [p, e] : factor_u64(t)) r.infinite.insert(p);
    }
    for (auto t : prefix) {
        if (t == 0) throw std::invalid_argument("sn_from_terms: zero term");
        for (const auto& [p, e] : factor_u64(t)) {
            if (!r.infinite.count(p)) r.finite[p] += e;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Bounded product-divisibility criterion. This is the direct reading of
// ratio membership off the defining products: m/n lies in prod(S)/prod(S')
// iff for every i some j has n*s_1..s_i | m*s'_1..s'_j, and symmetrically.
// It serves as an independent oracle for the exponent-map decision above.

struct TermSeq {
    std::vector<std::uint64_t> prefix;
    std::vector<std::uint64_t> period;  // empty means the tail is all ones

    std::uint64_t term(std::size_t i) const {  // 1-based
        if (i <= prefix.size()) return prefix[i - 1];
        if (period.empty()) return 1;
        return period[(i - 1 - prefix.size()) % period.size()];
    }
};

enum class Criterion { Holds, Fails, Exhausted };

namespace detail {

// One direction: for every i <= icap there must be j with
// a * A_1..A_i | b * B_1..B_j. Conclusive failure is detected when the
// missing factor is coprime to the period product of B (no later j can help).
inline Criterion divisibility_direction(const TermSeq& A, const TermSeq& B,
                                        const Int& a, const Int& b,
                                        unsigned horizon) {
    const std::size_t icap = A.prefix.size() + horizon * std::max<std::size_t>(1, A.period.size());
    const std::size_t jcap = B.prefix.size() + 4 * horizon * std::max<std::size_t>(1, B.period.size());
    Int qb = 1;
    for (auto t : B.period) qb *= t;
    Int L = a, R = b;
    std::size_t j = 0;
    for (std::size_t i = 1; i <= icap; ++i) {
        L *= A.term(i);
        while (R % L != 0) {
            // Not divisible yet; decide whether a later j can still work.
            // Once j is past the prefix, the only factors ever added to R
            // come from the period product, so a deficiency coprime to it
            // is permanent.
            if (j >= B.prefix.size()) {
                Int d = L / boost::multiprecision::gcd(L, R);
                if (boost::multiprecision::gcd(d, qb) == 1) return Criterion::Fails;
            }
            if (j >= jcap) return Criterion::Exhausted;
            ++j;
            R *= B.term(j);
        }
    }
    return Criterion::Holds;
}

}  // namespace detail

inline Criterion product_divisibility_criterion(const TermSeq& S, const TermSeq& Sp,
                                                const Rat& q, unsigned horizon) {
    if (q <= 0) throw std::invalid_argument("product criterion: ratio must be positive");
    for (auto t : S.prefix)
        if (t == 0) throw std::invalid_argument("product criterion: zero term");
    for (auto t : S.period)
        if (t == 0) throw std::invalid_argument("product criterion: zero term");
    for (auto t : Sp.prefix)
        if (t == 0) throw std::invalid_argument("product criterion: zero term");
    for (auto t : Sp.period)
        if (t == 0) throw std::invalid_argument("product criterion: zero term");
    Criterion fwd = detail::divisibility_direction(S, Sp, den(q), num(q), horizon);
    if (fwd == Criterion::Fails) return Criterion::Fails;
    Criterion bwd = detail::divisibility_direction(Sp, S, num(q), den(q), horizon);
    if (bwd == Criterion::Fails) return Criterion::Fails;
    if (fwd == Criterion::Exhausted || bwd == Criterion::Exhausted) return Criterion::Exhausted;
    return Criterion::Holds;
}

}  // namespace starlim
