#pragma once

// Eventually periodic triple sequences and their isomorphism invariants.
//
// A sequence of triples (l_i, r_i, z_i) describes a tower of matrix
// algebras with involution: stage i embeds into stage i+1 with l_i
// straight copies, r_i partner-swapped copies (type A only) and a zero
// block of size z_i, so the degrees satisfy n_1 = 1 and
// n_{i+1} = (l_i + r_i) * n_i + z_i.
//
// Writing s_i = l_i + r_i and c_i = l_i - r_i, the invariants of the
// limit algebra are:
//   pi_s   the supernatural number s_1 * s_2 * ...
//   delta  the limit of s_1...s_{i-1} / n_i (zero, or an exact rational)
//   sigma  the limit of c_1...c_{i-1} / s_1...s_{i-1} (type A)
//   pi_c   a companion supernatural built from the c_i
// together with a density class (sparse / dense / pure) and, for type A,
// a symmetry class driven by the behaviour of the r_i.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "supernatural.hpp"

namespace starlim {

enum class AlgebraType { O, S, A };

inline std::string algebra_type_name(AlgebraType t) {
    switch (t) {
        case AlgebraType::O: return "O";
        case AlgebraType::S: return "S";
        case AlgebraType::A: return "A";
    }
    return "?";
}

enum class DensityType { Sparse, Dense, Pure };

inline std::string density_name(DensityType d) {
    switch (d) {
        case DensityType::Sparse: return "sparse";
        case DensityType::Dense: return "dense";
        case DensityType::Pure: return "pure";
    }
    return "?";
}

enum class SymmetryType { OneSided, Symmetric, WeaklyNonsymmetric, StronglyNonsymmetric };

inline std::string symmetry_name(SymmetryType s) {
    switch (s) {
        case SymmetryType::OneSided: return "one-sided";
        case SymmetryType::Symmetric: return "symmetric";
        case SymmetryType::WeaklyNonsymmetric: return "weakly-nonsymmetric";
        case SymmetryType::StronglyNonsymmetric: return "strongly-nonsymmetric";
    }
    return "?";
}

struct Triple {
    Int l, r, z;

    Int s() const { return l + r; }
    Int c() const { return l - r; }

    bool operator==(const Triple&) const = default;
};

// sigma is zero for symmetric and weakly non-symmetric sequences, a
// positive rational for one-sided ones, and may be an undeclared symbol
// in a user-supplied strongly non-symmetric profile.
struct Sigma {
    enum class Kind { Zero, Positive, Opaque };
    Kind kind = Kind::Zero;
    Rat value = 0;        // Positive only
    std::string symbol;   // Opaque only

    static Sigma zero() { return {}; }
    static Sigma positive(Rat v) { return {Kind::Positive, std::move(v), {}}; }
    static Sigma opaque(std::string name) { return {Kind::Opaque, 0, std::move(name)}; }

    bool operator==(const Sigma&) const = default;
};

struct InvariantProfile {
    AlgebraType type = AlgebraType::O;
    std::uint32_t characteristic = 0;
    DensityType density = DensityType::Pure;
    Supernatural pi_s;
    Rat delta = 0;  // zero exactly in the sparse case
    std::optional<SymmetryType> symmetry;  // type A only
    Sigma sigma;                           // type A only
    std::optional<Supernatural> pi_c;      // type A, except symmetric
};

class TripleSequence {
  public:
    AlgebraType type = AlgebraType::O;
    std::uint32_t characteristic = 0;
    std::vector<Triple> prefix;
    std::vector<Triple> period;  // non-empty
    bool first_convention = true;

    // Triples are 1-based to match the degree indexing n_1 = 1.
    const Triple& term(std::size_t i) const {
        if (i == 0) throw std::invalid_argument("triple index is 1-based");
        if (i <= prefix.size()) return prefix[i - 1];
        return period[(i - 1 - prefix.size()) % period.size()];
    }

    std::size_t prefix_len() const { return prefix.size(); }
    std::size_t period_len() const { return period.size(); }

    // n_1 .. n_m.
    std::vector<Int> degrees(std::size_t m) const {
        std::vector<Int> n{1};
        n.reserve(m);
        for (std::size_t i = 1; i < m; ++i) n.push_back(term(i).s() * n.back() + term(i).z);
        return n;
    }

    Int degree(std::size_t i) const { return degrees(i).back(); }

    // Product s_i * ... * s_{k-1}; empty when k <= i.
    Int s_prod(std::size_t i, std::size_t k) const {
        Int p = 1;
        for (std::size_t t = i; t < k; ++t) p *= term(t).s();
        return p;
    }

    Int c_prod(std::size_t i, std::size_t k) const {
        Int p = 1;
        for (std::size_t t = i; t < k; ++t) p *= term(t).c();
        return p;
    }

    void validate() const;

    DensityType density_type() const {
        bool period_z_zero = true, period_s_one = true;
        for (const auto& t : period) {
            if (t.z != 0) period_z_zero = false;
            if (t.s() != 1) period_s_one = false;
        }
        if (period_z_zero) return DensityType::Pure;
        if (period_s_one) return DensityType::Sparse;
        return DensityType::Dense;
    }

    // Type A only; the period decides the class.
    SymmetryType symmetry_type() const {
        bool period_r_zero = true, period_c_zero = false;
        for (const auto& t : period) {
            if (t.r != 0) period_r_zero = false;
            if (t.c() == 0) period_c_zero = true;
        }
        if (period_r_zero) return SymmetryType::OneSided;
        if (period_c_zero) return SymmetryType::Symmetric;
        return SymmetryType::WeaklyNonsymmetric;
    }

    // Exact value of 1/delta = 1 + sum_i z_i / (s_1 ... s_i); finite for
    // dense and pure sequences. The tail over one period is a geometric
    // series with ratio 1/(period s-product).
    Rat inverse_delta() const {
        Rat inv = 1;
        Int head = 1;  // s_1 ... s_i as i walks the prefix
        for (const auto& t : prefix) {
            head *= t.s();
            inv += Rat(t.z, head);
        }
        Int ps = 1;
        Rat c = 0;
        Int run = 1;
        for (const auto& t : period) {
            ps *= t.s();
            run *= t.s();
            c += Rat(t.z, run);
        }
        if (c != 0) {
            if (ps == 1) throw std::invalid_argument("inverse_delta: sparse sequence");
            inv += Rat(1, head) * c * Rat(ps, ps - 1);
        }
        return inv;
    }

    Rat delta() const {
        if (density_type() == DensityType::Sparse) return 0;
        return 1 / inverse_delta();
    }

    // n_i / (s_1 ... s_{i-1}), the i-th partial value of 1/delta.
    Rat inverse_delta_partial(std::size_t i) const {
        return Rat(degree(i), s_prod(1, i));
    }

    // Index of the last triple with c = 0; zero when none. For sequences
    // that are not symmetric this lands inside the prefix.
    std::size_t last_zero_c() const {
        std::size_t k = 0;
        for (std::size_t i = 1; i <= prefix.size(); ++i)
            if (term(i).c() == 0) k = i;
        return k;
    }

    // Stabilized value of the product c_1...c_i / s_1...s_i, taken past
    // the last zero factor. Exact for one-sided sequences, where period
    // factors are all 1.
    Rat sigma_value() const {
        std::size_t k = last_zero_c();
        Int cs = 1, ss = 1;
        for (std::size_t i = k + 1; i <= prefix.size(); ++i) {
            cs *= term(i).c();
            ss *= term(i).s();
        }
        return Rat(cs, ss);
    }

    InvariantProfile invariant_profile() const;

    // Step sizes as an eventually periodic term sequence (for the bounded
    // divisibility oracle).
    TermSeq s_terms() const {
        TermSeq t;
        for (const auto& x : prefix) t.prefix.push_back(static_cast<std::uint64_t>(x.s()));
        for (const auto& x : period) t.period.push_back(static_cast<std::uint64_t>(x.s()));
        return t;
    }
};

inline void TripleSequence::validate() const {
    if (period.empty())
        throw SchemaError("sequence: period must be non-empty (repeat one triple for a stationary tail)");
    if (characteristic != 0 && !is_prime_u64(characteristic))
        throw SchemaError("sequence: characteristic must be 0 or a prime");
    const Int cap = Int(1) << 63;
    auto check = [&](const Triple& t, const char* where) {
        if (t.l < 0 || t.r < 0 || t.z < 0)
            throw SchemaError(std::string("sequence: negative entry in ") + where);
        if (t.r > t.l)
            throw SchemaError(std::string("sequence: r > l in ") + where +
                              " (swap the pair components to normalize)");
        if (t.s() == 0) throw SchemaError(std::string("sequence: l + r = 0 in ") + where);
        if (t.l >= cap || t.r >= cap || t.z >= cap)
            throw SchemaError(std::string("sequence: entry exceeds 64 bits in ") + where);
        if (type != AlgebraType::A && t.r != 0)
            throw SchemaError("sequence: r > 0 requires type A");
    };
    for (const auto& t : prefix) check(t, "prefix");
    for (const auto& t : period) check(t, "period");
    if (first_convention && term(1).z != 0)
        throw SchemaError("sequence: first triple must have z = 0 (or clear first_convention)");
    if (type == AlgebraType::S) {
        // Symplectic degrees must stay even past the base field.
        if ((term(1).s() + term(1).z) % 2 != 0)
            throw SchemaError("sequence: symplectic tower needs an even second degree");
        for (std::size_t i = 2; i <= prefix.size() + period.size() + 1; ++i)
            if (term(i).z % 2 != 0)
                throw SchemaError("sequence: symplectic tower needs even z entries");
    }
}

inline InvariantProfile TripleSequence::invariant_profile() const {
    validate();
    InvariantProfile p;
    p.type = type;
    p.characteristic = characteristic;
    p.density = density_type();
    std::vector<std::uint64_t> sp, ss;
    for (const auto& t : prefix) sp.push_back(static_cast<std::uint64_t>(t.s()));
    for (const auto& t : period) ss.push_back(static_cast<std::uint64_t>(t.s()));
    p.pi_s = sn_from_terms(sp, ss);
    p.delta = p.density == DensityType::Sparse ? Rat(0) : delta();
    if (type == AlgebraType::A) {
        SymmetryType sym = symmetry_type();
        p.symmetry = sym;
        if (sym == SymmetryType::Symmetric) {
            p.sigma = Sigma::zero();
        } else {
            // Companion supernatural: the c-product past the last zero
            // factor, rescaled by the skipped s-head so that both stored
            // numbers carry a common normalization.
            std::size_t k = last_zero_c();
            std::vector<std::uint64_t> cp, cs;
            for (std::size_t i = 1; i <= k; ++i)
                cp.push_back(static_cast<std::uint64_t>(term(i).s()));
            for (std::size_t i = k + 1; i <= prefix.size(); ++i)
                cp.push_back(static_cast<std::uint64_t>(term(i).c()));
            for (const auto& t : period) cs.push_back(static_cast<std::uint64_t>(t.c()));
            p.pi_c = sn_from_terms(cp, cs);
            p.sigma = sym == SymmetryType::OneSided ? Sigma::positive(sigma_value())
                                                    : Sigma::zero();
        }
    }
    return p;
}

// Drops the initial segment through the last zero c and re-prepends a
// single triple of the same degree, so that every c past the first triple
// is positive. Leaves other sequences untouched. The first triple of the
// result can exceed 64 bits; downstream consumers work on exact integers.
struct NormalizedSequence {
    TripleSequence seq;
    std::size_t dropped = 0;  // triples removed from the front
    Rat scale = 1;            // (s_1...s_k+1-head) / n_{k+1}, relates old and new delta
};

inline NormalizedSequence normalize_zero_c(const TripleSequence& in) {
    NormalizedSequence out{in, 0, 1};
    if (in.type != AlgebraType::A) return out;
    if (in.symmetry_type() == SymmetryType::Symmetric) return out;
    std::size_t k = in.last_zero_c();
    if (k == 0) return out;
    Int nk1 = in.degree(k + 1);
    out.dropped = k;
    out.scale = Rat(in.s_prod(1, k + 1), nk1);
    out.seq.prefix.clear();
    out.seq.prefix.push_back(Triple{nk1, 0, 0});
    for (std::size_t i = k + 1; i <= in.prefix.size(); ++i)
        out.seq.prefix.push_back(in.term(i));
    return out;
}

}  // namespace starlim
