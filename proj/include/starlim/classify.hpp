#pragma once

// The isomorphism decision. Two limit algebras presented by triple
// sequences (or directly by invariant profiles) are isomorphic exactly
// when their profiles agree in the following sense:
//
//   A1  same density class (sparse / dense / pure)
//   A2  the step products pi_s generate the same rational-multiple class
//   A3  (dense and pure only) delta/delta' lies in pi_s / pi_s'
// and additionally for pair algebras (type A):
//   B1  same symmetry class
//   B2  (weakly and strongly non-symmetric) pi_c classes agree
//   B3  (strongly non-symmetric) some alpha in pi_s / pi_s' has
//       alpha * sigma/sigma' in pi_c / pi_c'; when delta is positive,
//       alpha is forced to be delta/delta'.
//
// Across types (same characteristic != 2):
//   pair vs one-component: the pair side must be symmetric and the
//     one-component side must have 2^inf in its step product, then A1-A3;
//   orthogonal vs symplectic: both step products need 2^inf, then A1-A3.
// In characteristic 2 different types are never isomorphic.
//
// The verdict records the first failing condition in the order above
// (cross-type preconditions first for mixed pairs) and carries witness
// ratios when the answer is yes.

#include <optional>
#include <string>

#include "seqspec.hpp"

namespace starlim {

enum class Condition {
    Density,           // A1
    StepClass,         // A2
    DeltaRatio,        // A3
    Symmetry,          // B1
    CompanionClass,    // B2
    CompanionRatio,    // B3
    CrossPair,         // pair vs one-component preconditions
    CrossEvenSteps,    // orthogonal vs symplectic precondition
    CrossChar2,        // characteristic 2 cross-type
};

// Wire tags fixed by the output format.
inline std::string condition_tag(Condition c) {
    switch (c) {
        case Condition::Density: return "A1";
        case Condition::StepClass: return "A2";
        case Condition::DeltaRatio: return "A3";
        case Condition::Symmetry: return "B1";
        case Condition::CompanionClass: return "B2";
        case Condition::CompanionRatio: return "B3";
        case Condition::CrossPair: return "T51i";
        case Condition::CrossEvenSteps: return "T51ii";
        case Condition::CrossChar2: return "T51iii";
    }
    return "?";
}

struct Verdict {
    enum class State { Isomorphic, NotIsomorphic, Undetermined };
    State state = State::Undetermined;
    std::optional<Condition> failed;  // NotIsomorphic only
    std::optional<Rat> alpha, beta;   // witnesses, Isomorphic only
    std::string note;

    static Verdict yes(std::optional<Rat> a = {}, std::optional<Rat> b = {}) {
        return {State::Isomorphic, {}, std::move(a), std::move(b), {}};
    }
    static Verdict no(Condition c) { return {State::NotIsomorphic, c, {}, {}, {}}; }
    static Verdict unknown(std::string why) {
        return {State::Undetermined, {}, {}, {}, std::move(why)};
    }
};

struct ClassifyOptions {
    // Declares that two opaque sigma symbols denote the same value.
    bool sigma_equal = false;
};

namespace detail {

// sigma / sigma' as a rational, when the profiles allow it.
enum class SigmaRatio { Value, Undetermined };

inline SigmaRatio sigma_ratio(const Sigma& s1, const Sigma& s2, const ClassifyOptions& opt,
                              Rat& out) {
    if (s1.kind == Sigma::Kind::Positive && s2.kind == Sigma::Kind::Positive) {
        out = s1.value / s2.value;
        return SigmaRatio::Value;
    }
    if (s1.kind == Sigma::Kind::Opaque && s2.kind == Sigma::Kind::Opaque) {
        if (s1.symbol == s2.symbol || opt.sigma_equal) {
            out = 1;
            return SigmaRatio::Value;
        }
        return SigmaRatio::Undetermined;
    }
    return SigmaRatio::Undetermined;
}

// Decides whether v = g_s * g_c with g_s supported on inf_s and g_c on
// inf_c, returning the inf_s part as a witness adjustment.
inline std::optional<Rat> split_over_supports(const Rat& v, const std::set<std::uint64_t>& inf_s,
                                              const std::set<std::uint64_t>& inf_c) {
    Int x = num(v), y = den(v);
    Int gs_n = 1, gs_d = 1;
    for (auto p : inf_s) {
        std::uint64_t en = strip_prime(x, p);
        std::uint64_t ed = strip_prime(y, p);
        Int pk = 1;
        for (std::uint64_t i = 0; i < (en > ed ? en - ed : ed - en); ++i) pk *= p;
        if (en > ed) gs_n *= pk;
        else gs_d *= pk;
    }
    for (auto p : inf_c) {
        strip_prime(x, p);
        strip_prime(y, p);
    }
    if (x != 1 || y != 1) return std::nullopt;
    return Rat(gs_n, gs_d);
}

}  // namespace detail

// Shared A-conditions; fills alpha on success.
inline std::optional<Condition> check_step_conditions(const InvariantProfile& a,
                                                      const InvariantProfile& b, Rat& alpha) {
    if (a.density != b.density) return Condition::Density;
    if (!q_equivalent(a.pi_s, b.pi_s)) return Condition::StepClass;
    if (a.density == DensityType::Sparse) {
        alpha = ratio_witness(a.pi_s, b.pi_s);
        return std::nullopt;
    }
    alpha = a.delta / b.delta;
    if (!rational_ratio_member(alpha, a.pi_s, b.pi_s)) return Condition::DeltaRatio;
    return std::nullopt;
}

inline Verdict classify_profiles(const InvariantProfile& a, const InvariantProfile& b,
                                 const ClassifyOptions& opt = {}) {
    if (a.characteristic != b.characteristic)
        throw SchemaError("classify: profiles live over different characteristics");

    if (a.type != b.type) {
        if (a.characteristic == 2) return Verdict::no(Condition::CrossChar2);
        bool has_pair = a.type == AlgebraType::A || b.type == AlgebraType::A;
        if (has_pair) {
            const InvariantProfile& pair = a.type == AlgebraType::A ? a : b;
            const InvariantProfile& one = a.type == AlgebraType::A ? b : a;
            if (pair.symmetry != SymmetryType::Symmetric) return Verdict::no(Condition::CrossPair);
            if (!one.pi_s.infinite.count(2)) return Verdict::no(Condition::CrossPair);
        } else {
            if (!a.pi_s.infinite.count(2) || !b.pi_s.infinite.count(2))
                return Verdict::no(Condition::CrossEvenSteps);
        }
        Rat alpha;
        if (auto fail = check_step_conditions(a, b, alpha)) return Verdict::no(*fail);
        return Verdict::yes(alpha);
    }

    Rat alpha;
    if (auto fail = check_step_conditions(a, b, alpha)) return Verdict::no(*fail);
    if (a.type != AlgebraType::A) return Verdict::yes(alpha);

    if (!a.symmetry || !b.symmetry)
        throw SchemaError("classify: pair profile lacks a symmetry class");
    if (a.symmetry != b.symmetry) return Verdict::no(Condition::Symmetry);
    SymmetryType sym = *a.symmetry;
    if (sym == SymmetryType::Symmetric) return Verdict::yes(alpha);
    if (sym == SymmetryType::OneSided) {
        // sigma is not a separate condition here, but alpha * sigma/sigma'
        // is the natural companion ratio and certificates use it.
        std::optional<Rat> beta;
        if (a.sigma.kind == Sigma::Kind::Positive && b.sigma.kind == Sigma::Kind::Positive)
            beta = alpha * a.sigma.value / b.sigma.value;
        return Verdict::yes(alpha, std::move(beta));
    }

    if (!a.pi_c || !b.pi_c) throw SchemaError("classify: non-symmetric profile lacks pi_c");
    if (!q_equivalent(*a.pi_c, *b.pi_c)) return Verdict::no(Condition::CompanionClass);
    if (sym == SymmetryType::WeaklyNonsymmetric)
        return Verdict::yes(alpha, ratio_witness(*a.pi_c, *b.pi_c));

    // Strongly non-symmetric: couple the two ratio classes through sigma.
    Rat ratio;
    if (detail::sigma_ratio(a.sigma, b.sigma, opt, ratio) == detail::SigmaRatio::Undetermined)
        return Verdict::unknown("sigma values are opaque with no declared relation");
    if (a.density != DensityType::Sparse) {
        // alpha is pinned to delta/delta'.
        Rat beta = alpha * ratio;
        if (!rational_ratio_member(beta, *a.pi_c, *b.pi_c))
            return Verdict::no(Condition::CompanionRatio);
        return Verdict::yes(alpha, beta);
    }
    // Sparse: alpha may range over the whole class w_s * <inf primes>.
    // alpha * ratio must land in w_c * <inf primes of pi_c>, which happens
    // exactly when (w_s * ratio) / w_c splits over the two supports.
    Rat ws = ratio_witness(a.pi_s, b.pi_s);
    Rat wc = ratio_witness(*a.pi_c, *b.pi_c);
    auto gs = detail::split_over_supports(ws * ratio / wc, a.pi_s.infinite, a.pi_c->infinite);
    if (!gs) return Verdict::no(Condition::CompanionRatio);
    Rat best_alpha = ws / *gs;  // moves the inf_s part across
    return Verdict::yes(best_alpha, best_alpha * ratio);
}

inline Verdict classify_sequences(const TripleSequence& a, const TripleSequence& b,
                                  const ClassifyOptions& opt = {}) {
    return classify_profiles(a.invariant_profile(), b.invariant_profile(), opt);
}

// The step product of a unital one-component chain (all z = 0) is a
// complete invariant on its own.
inline Supernatural glimm_supernatural(const TripleSequence& t) {
    t.validate();
    if (t.type == AlgebraType::A)
        throw std::invalid_argument("glimm invariant applies to one-component chains");
    for (std::size_t i = 1; i <= t.prefix_len() + t.period_len(); ++i)
        if (t.term(i).z != 0)
            throw std::invalid_argument("glimm invariant needs a unital chain (all z = 0)");
    return t.invariant_profile().pi_s;
}

}  // namespace starlim
