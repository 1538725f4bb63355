#pragma once

// Built-in oracle suites: exact-matrix recomputations of the algebraic
// laws the library leans on.  Deterministic for a given seed; every
// suite prints one line and the command fails if any suite does.

#include <array>
#include <ostream>
#include <random>
#include <string>

#include "matrixlab.hpp"
#include "rational.hpp"
#include "supernatural.hpp"

namespace starlim {

inline std::uint64_t parse_seed_hex(const std::string& s) {
    if (s.empty() || s.size() > 16) throw SchemaError("seed: need 1..16 hex digits");
    std::uint64_t v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw SchemaError(std::string("seed: '") + c + "' is not a hex digit");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return v;
}

namespace detail {

// One random embedding signature out of src with target degree <= cap.
template <class Rng>
Triple random_signature(AlgebraType x, std::size_t src, std::size_t cap, Rng& rng) {
    std::uniform_int_distribution<int> small(0, 3);
    for (;;) {
        Int l = small(rng) + 1;
        Int r = x == AlgebraType::A ? Int(small(rng)) : Int(0);
        if (r > l) std::swap(l, r);
        Int z = small(rng);
        if (x == AlgebraType::S && z % 2 != 0) z += 1;
        Int tgt = (l + r) * src + z;
        if (tgt <= Int(cap)) return {l, r, z};
    }
}

template <class F, class Rng>
bool composition_law_once(AlgebraType x, const F& field, std::size_t cap, Rng& rng) {
    std::uniform_int_distribution<int> base(1, 3);
    std::size_t n1 = static_cast<std::size_t>(base(rng));
    if (x == AlgebraType::S) n1 = 2;
    Triple s1 = random_signature(x, n1, cap / 2 + 1, rng);
    std::size_t n2 = static_cast<std::size_t>((s1.s() * n1 + s1.z).template convert_to<long long>());
    Triple s2 = random_signature(x, n2, cap, rng);
    std::size_t n3 = static_cast<std::size_t>((s2.s() * n2 + s2.z).template convert_to<long long>());

    auto a1 = make_algebra(x, n1, field);
    auto a2 = make_algebra(x, n2, field);
    auto a3 = make_algebra(x, n3, field);
    auto e1 = canonical_embedding(a1, a2, s1);
    auto e2 = canonical_embedding(a2, a3, s2);
    auto whole = compose(e1, e2);

    Triple law{s1.l * s2.l + s1.r * s2.r, s1.r * s2.l + s1.l * s2.r,
               s1.z * (s2.l + s2.r) + s2.z};
    return extract_signature(as_map(whole)) == law &&
           extract_signature(as_map(e1)) == s1 && involution_respected(as_map(whole));
}

}  // namespace detail

inline int cmd_selftest(const std::string& seed_hex, std::size_t max_degree, std::ostream& out) {
    std::uint64_t seed = parse_seed_hex(seed_hex);
    if (max_degree < 8 || max_degree > kMaxOracleDegree)
        throw SchemaError("selftest: max degree must lie in 8..64");
    out << "seed: " << seed_hex << "\n";
    bool all_ok = true;
    auto report = [&](const char* name, bool ok, long long checks) {
        out << (ok ? "ok " : "FAIL ") << name << " (" << checks << " checks)\n";
        all_ok = all_ok && ok;
    };

    {
        std::mt19937_64 rng(seed);
        RationalField fq;
        PrimeField f2(2);
        bool ok = true;
        long long checks = 0;
        for (AlgebraType x : {AlgebraType::O, AlgebraType::A, AlgebraType::S}) {
            for (int t = 0; t < 12; ++t) {
                ok = ok && detail::composition_law_once(x, fq, max_degree, rng);
                ok = ok && detail::composition_law_once(x, f2, max_degree, rng);
                checks += 2;
            }
        }
        report("composition-law", ok, checks);
    }

    {
        std::mt19937_64 rng(seed ^ 0x517e5eed);
        RationalField fq;
        bool ok = true;
        long long checks = 0;
        std::uniform_int_distribution<int> pick(0, 2);
        for (int t = 0; t < 40; ++t) {
            AlgebraType x = std::array{AlgebraType::O, AlgebraType::A, AlgebraType::S}[pick(rng)];
            std::size_t n1 = x == AlgebraType::S ? 2 : 1 + t % 3;
            Triple sig = detail::random_signature(x, n1, max_degree, rng);
            auto src = make_algebra(x, n1, fq);
            auto dst = make_algebra(
                x, static_cast<std::size_t>((sig.s() * n1 + sig.z).convert_to<long long>()), fq);
            auto e = canonical_embedding(src, dst, sig);
            ok = ok && extract_signature(as_map(e)) == sig && involution_respected(as_map(e));
            ++checks;
        }
        report("canonical-roundtrip", ok, checks);
    }

    {
        auto r2 = char2_alternating_check(2, 0, seed);
        auto r4 = char2_alternating_check(4, 150, seed + 1);
        bool ok = r2.all_alternating && r4.all_alternating;
        long long pairs = r2.pairs_checked + r4.pairs_checked;
        if (max_degree >= 6) {
            auto r6 = char2_alternating_check(6, 100, seed + 2);
            ok = ok && r6.all_alternating;
            pairs += r6.pairs_checked;
        }
        report("char2-alternating", ok, pairs);
    }

    {
        std::mt19937_64 rng(seed ^ 0xd1571de5);
        bool ok = true;
        long long conclusive = 0;
        std::uniform_int_distribution<int> len(0, 2), plen(1, 3), entry(1, 8), mn(1, 12);
        for (int t = 0; t < 200; ++t) {
            TermSeq S, Sp;
            for (int i = len(rng); i-- > 0;) S.prefix.push_back(entry(rng));
            for (int i = plen(rng); i-- > 0;) S.period.push_back(entry(rng));
            for (int i = len(rng); i-- > 0;) Sp.prefix.push_back(entry(rng));
            for (int i = plen(rng); i-- > 0;) Sp.period.push_back(entry(rng));
            Rat q(mn(rng), mn(rng));
            bool member = rational_ratio_member(q, sn_from_terms(S.prefix, S.period),
                                                sn_from_terms(Sp.prefix, Sp.period));
            Criterion c = product_divisibility_criterion(S, Sp, q, 12);
            if (c != Criterion::Exhausted) {
                ++conclusive;
                ok = ok && member == (c == Criterion::Holds);
            }
        }
        report("divisibility-criterion", ok && conclusive > 100, conclusive);
    }

    out << (all_ok ? "selftest: all suites passed\n" : "selftest: FAILURES above\n");
    return all_ok ? 0 : 1;
}

}  // namespace starlim
