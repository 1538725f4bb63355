#pragma once

// Explicit isomorphism certificates between two towers presented by
// triple sequences. The certificate is a zig-zag of embeddings
//
//   A_{i_1} -> A'_{j_1} -> A_{i_2} -> A'_{j_2} -> ...
//
// whose triangles commute with the tower embeddings up to the canonical
// block form, so the limit algebras are identified stage by stage.
//
// Each leg carries a multiplier a (and b for non-symmetric pair towers)
// tied to the witness ratios alpha and beta by the running invariants
//
//   s_1...s_{i-1} = a * alpha * s'_1...s'_{j-1}
//   c_1...c_{i-1} = b * beta  * c'_1...c'_{j-1}
//
// which swap sides after every leg. A leg from stage n to stage n' with
// multipliers (a, b) embeds with signature (p, q, u) where p + q = a,
// p - q = b and u = n' - a * n. Legs are found by a least-index scan;
// the classifier conditions guarantee the scan terminates, and a hard
// cap turns pathological inputs into a DepthExceeded error instead of a
// loop.
//
// Towers of different types are routed through a pair tower first: a
// one-component tower whose step product contains 2^inf embeds into a
// pair tower along even-step ranges, and the zig-zag then runs between
// pair towers.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "classify.hpp"
#include "matrixlab.hpp"
#include "seqspec.hpp"

namespace starlim {

// ---------------------------------------------------------------------------
// Signature calculus.

// Signature of the composite of two stacked embeddings (first, then
// second), in the block-slot calculus: straight and swapped copies
// multiply like (l1 + r1 j)(l2 + r2 j) with j^2 = 1, and the zero block
// collects z1 copies per slot of the second map plus its own z2.
inline Triple compose_signatures(const Triple& first, const Triple& second) {
    Triple t;
    t.l = first.l * second.l + first.r * second.r;
    t.r = first.r * second.l + first.l * second.r;
    t.z = first.z * (second.l + second.r) + second.z;
    return t;
}

// Composite signature of the tower embeddings from stage lo to stage hi.
inline Triple range_signature(const TripleSequence& t, std::size_t lo, std::size_t hi) {
    if (lo == 0 || hi < lo) throw std::invalid_argument("range_signature: bad stage range");
    Triple acc{1, 0, 0};
    for (std::size_t i = lo; i < hi; ++i) acc = compose_signatures(acc, t.term(i));
    return acc;
}

// Solves total = second o first for the second factor, given the middle
// and target degrees. The s and c parts must divide; when the first
// factor kills the c part (c1 = 0) the total must too, and the smallest
// parity-consistent c2 is chosen. Returns nothing when no embedding
// signature works.
inline std::optional<Triple> factor_signature(const Triple& total, const Triple& first,
                                              const Int& mid_degree, const Int& target_degree) {
    Int s = total.s(), s1 = first.s();
    if (s1 <= 0 || s <= 0) throw std::invalid_argument("factor_signature: empty signatures");
    if (s % s1 != 0) return std::nullopt;
    Int s2 = s / s1;
    Int c = total.c(), c1 = first.c(), c2;
    if (c1 != 0) {
        if (c % c1 != 0) return std::nullopt;
        c2 = c / c1;
        if (c2 < 0) return std::nullopt;
    } else {
        if (c != 0) return std::nullopt;
        c2 = s2 % 2;
    }
    if (c2 > s2 || (s2 - c2) % 2 != 0) return std::nullopt;
    Int z2 = target_degree - s2 * mid_degree;
    if (z2 < 0) return std::nullopt;
    return Triple{(s2 + c2) / 2, (s2 - c2) / 2, z2};
}

// ---------------------------------------------------------------------------
// Diagram data.

struct DiagramLeg {
    std::size_t from = 0, to = 0;  // stage indices on the two towers
    Triple sig;                    // (p, q, u)
    Int a = 1, b = 1;              // leg multipliers
};

struct IntertwinerDiagram {
    TripleSequence left, right;  // normalized working towers
    std::size_t dropped_left = 0, dropped_right = 0;
    Rat alpha = 1;
    std::optional<Rat> beta;  // tracked for non-symmetric pair towers
    bool symmetric_mode = false;
    std::size_t j0 = 1;
    std::size_t i1 = 1;
    Int a0 = 1, b0 = 1;
    std::vector<DiagramLeg> down;  // down[k]: left i_k -> right j_k
    std::vector<DiagramLeg> up;    // up[k]:   right j_k -> left i_{k+1}
};

struct ZigZagOptions {
    std::size_t depth = 4;        // down/up rounds to construct
    std::size_t max_periods = 10; // scan budget per leg, in periods
};

// ---------------------------------------------------------------------------
// Leg search.

namespace detail {

inline std::size_t scan_cap(const TripleSequence& s, std::size_t from, std::size_t max_periods) {
    return from + s.prefix_len() + max_periods * std::max<std::size_t>(1, s.period_len()) + 8;
}

struct LegQuery {
    const TripleSequence* seq = nullptr;  // tower being scanned (leg target)
    std::size_t start = 1;                // current stage on that tower
    Int a_div = 1, b_div = 1;             // multipliers before the leg
    bool track_b = false;
    bool symmetric = false;
    Int src_degree = 1;                   // stage degree at the leg source
    std::size_t from_index = 1;           // source stage (recorded in the leg)
    std::size_t cap = 0;
};

// Least stage k > start whose range products are compatible with the
// incoming multipliers and leave a non-negative zero block.
inline DiagramLeg leg_scan(const LegQuery& q) {
    Int srange = 1, crange = 1;
    Int deg = q.seq->degree(q.start);
    for (std::size_t k = q.start + 1; k <= q.cap; ++k) {
        const Triple& t = q.seq->term(k - 1);
        srange *= t.s();
        crange *= t.c();
        deg = t.s() * deg + t.z;
        if (srange % q.a_div != 0) continue;
        Int a = srange / q.a_div;
        Int b, p, pq;
        if (q.symmetric) {
            if (a % 2 != 0) continue;
            if (crange != 0) continue;  // the range must absorb the c part
            b = 0;
            p = a / 2;
            pq = a / 2;
        } else if (q.track_b) {
            if (crange % q.b_div != 0) continue;
            b = crange / q.b_div;
            if (b > a || (a - b) % 2 != 0) continue;
            p = (a + b) / 2;
            pq = (a - b) / 2;
        } else {
            b = a;  // one-component towers have c = s throughout
            p = a;
            pq = 0;
        }
        Int u = deg - a * q.src_degree;
        if (u < 0) continue;
        return {q.from_index, k, Triple{p, pq, u}, a, b};
    }
    throw DepthExceeded("leg scan exhausted its budget; raise the period cap");
}

struct InitResult {
    std::size_t i1 = 1;
    Int a0 = 1, b0 = 1;
};

// Least stage i with alpha^-1 * s_1...s_{i-1} integral (and the same for
// beta against the c products, when tracked).
inline InitResult init_scan(const TripleSequence& seq, const Rat& alpha,
                            const std::optional<Rat>& beta, std::size_t cap) {
    Int srange = 1, crange = 1;
    for (std::size_t i = 1; i <= cap; ++i) {
        if (i > 1) {
            const Triple& t = seq.term(i - 1);
            srange *= t.s();
            crange *= t.c();
        }
        Int an = num(alpha), ad = den(alpha);
        if ((ad * srange) % an != 0) continue;
        InitResult r;
        r.i1 = i;
        r.a0 = ad * srange / an;
        r.b0 = r.a0;
        if (beta) {
            Int bn = num(*beta), bd = den(*beta);
            if ((bd * crange) % bn != 0) continue;
            r.b0 = bd * crange / bn;
        }
        return r;
    }
    throw DepthExceeded("starting stage scan exhausted its budget");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Construction.

inline IntertwinerDiagram build_diagram(const TripleSequence& a_in, const TripleSequence& b_in,
                                        const ZigZagOptions& opts = {}) {
    a_in.validate();
    b_in.validate();
    if (a_in.type != b_in.type)
        throw std::invalid_argument("build_diagram: towers differ in type; bridge them first");
    Verdict v = classify_sequences(a_in, b_in);
    if (v.state != Verdict::State::Isomorphic)
        throw std::invalid_argument("build_diagram: the towers are not isomorphic");

    auto na = normalize_zero_c(a_in);
    auto nb = normalize_zero_c(b_in);
    // Normalization rescales the step and c products by scale, so the
    // witness ratios of the normalized towers pick up scale'/scale.
    Rat adjust = nb.scale / na.scale;

    IntertwinerDiagram d;
    d.left = na.seq;
    d.right = nb.seq;
    d.dropped_left = na.dropped;
    d.dropped_right = nb.dropped;
    d.alpha = *v.alpha * adjust;
    d.symmetric_mode =
        a_in.type == AlgebraType::A && a_in.symmetry_type() == SymmetryType::Symmetric;
    bool track_b = a_in.type == AlgebraType::A && !d.symmetric_mode;
    if (track_b) {
        Rat beta_plain;
        if (v.beta) {
            beta_plain = *v.beta;
        } else {
            auto pa = a_in.invariant_profile(), pb = b_in.invariant_profile();
            beta_plain = *v.alpha * pa.sigma.value / pb.sigma.value;
        }
        d.beta = beta_plain * adjust;
    }

    auto ini = detail::init_scan(d.left, d.alpha, d.beta,
                                 detail::scan_cap(d.left, 1, opts.max_periods));
    d.i1 = ini.i1;
    d.a0 = ini.a0;
    d.b0 = d.symmetric_mode ? Int(0) : ini.b0;

    std::size_t i_cur = d.i1, j_cur = d.j0;
    Int a_cur = d.a0, b_cur = d.b0;
    for (std::size_t k = 0; k < opts.depth; ++k) {
        detail::LegQuery down;
        down.seq = &d.right;
        down.start = j_cur;
        down.a_div = a_cur;
        down.b_div = b_cur;
        down.track_b = track_b;
        down.symmetric = d.symmetric_mode;
        down.src_degree = d.left.degree(i_cur);
        down.from_index = i_cur;
        down.cap = detail::scan_cap(d.right, j_cur, opts.max_periods);
        DiagramLeg dl = detail::leg_scan(down);
        d.down.push_back(dl);
        j_cur = dl.to;
        a_cur = dl.a;
        b_cur = dl.b;

        detail::LegQuery up;
        up.seq = &d.left;
        up.start = i_cur;
        up.a_div = a_cur;
        up.b_div = b_cur;
        up.track_b = track_b;
        up.symmetric = d.symmetric_mode;
        up.src_degree = d.right.degree(j_cur);
        up.from_index = j_cur;
        up.cap = detail::scan_cap(d.left, i_cur, opts.max_periods);
        DiagramLeg ul = detail::leg_scan(up);
        d.up.push_back(ul);
        i_cur = ul.to;
        a_cur = ul.a;
        b_cur = ul.b;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Verification against the combinatorial identities. Throws on the first
// violated invariant; a diagram from build_diagram always passes, so this
// doubles as a self-check for serialized diagrams.

inline void verify_diagram(const IntertwinerDiagram& d) {
    auto fail = [](const char* what) { throw std::logic_error(std::string("diagram: ") + what); };
    const TripleSequence& T = d.left;
    const TripleSequence& U = d.right;
    if (d.down.size() != d.up.size() || d.down.empty()) fail("legs must come in down/up pairs");
    bool track_b = d.beta.has_value();

    if (Rat(T.s_prod(1, d.i1)) != Rat(d.a0) * d.alpha * Rat(U.s_prod(1, d.j0)))
        fail("alpha does not match the starting stage");
    if (track_b && Rat(T.c_prod(1, d.i1)) != Rat(d.b0) * *d.beta * Rat(U.c_prod(1, d.j0)))
        fail("beta does not match the starting stage");

    std::size_t i_k = d.i1, j_prev = d.j0;
    Int a_prev = d.a0, b_prev = d.b0;
    for (std::size_t k = 0; k < d.down.size(); ++k) {
        const DiagramLeg& dn = d.down[k];
        const DiagramLeg& upl = d.up[k];
        if (dn.from != i_k || upl.from != dn.to) fail("leg endpoints do not chain");
        if (dn.to <= j_prev || upl.to <= i_k) fail("stage indices must increase");

        if (U.s_prod(j_prev, dn.to) != dn.a * a_prev) fail("a chain breaks on a down leg");
        if (T.s_prod(i_k, upl.to) != upl.a * dn.a) fail("a chain breaks on an up leg");
        if (track_b) {
            if (U.c_prod(j_prev, dn.to) != dn.b * b_prev) fail("b chain breaks on a down leg");
            if (T.c_prod(i_k, upl.to) != upl.b * dn.b) fail("b chain breaks on an up leg");
        }
        if (d.symmetric_mode) {
            if (U.c_prod(j_prev, dn.to) != 0 || T.c_prod(i_k, upl.to) != 0)
                fail("symmetric legs need a zero c factor in every range");
        }

        for (const DiagramLeg* leg : {&dn, &upl}) {
            if (leg->sig.l + leg->sig.r != leg->a) fail("leg signature loses its a multiplier");
            if (d.symmetric_mode) {
                if (leg->sig.l != leg->sig.r || leg->b != 0) fail("symmetric legs need p = q");
            } else if (track_b) {
                if (leg->sig.l - leg->sig.r != leg->b) fail("leg signature loses its b multiplier");
            } else {
                if (leg->sig.r != 0) fail("one-component legs cannot swap");
            }
            if (leg->sig.z < 0 || leg->sig.r < 0 || leg->sig.l < leg->sig.r)
                fail("leg signature is not an embedding");
        }
        if (U.degree(dn.to) != dn.a * T.degree(i_k) + dn.sig.z) fail("down leg degree equation");
        if (T.degree(upl.to) != upl.a * U.degree(dn.to) + upl.sig.z) fail("up leg degree equation");

        if (!(compose_signatures(dn.sig, upl.sig) == range_signature(T, i_k, upl.to)))
            fail("left triangle does not reproduce the tower embedding");
        if (k + 1 < d.down.size()) {
            if (!(compose_signatures(upl.sig, d.down[k + 1].sig) ==
                  range_signature(U, dn.to, d.down[k + 1].to)))
                fail("right triangle does not reproduce the tower embedding");
        }

        j_prev = dn.to;
        i_k = upl.to;
        a_prev = upl.a;
        b_prev = upl.b;
    }
}

// ---------------------------------------------------------------------------
// Literal replay of the desk-scale triangles through matrix algebras.

struct ReplayReport {
    int checked = 0;
    int skipped = 0;  // stages above the degree cap, or symplectic base stages
};

namespace detail {

inline std::size_t small_degree(const Int& n) { return n.convert_to<std::size_t>(); }

inline bool replay_triangle(const TripleSequence& outer, std::size_t lo, std::size_t hi,
                            const TripleSequence& inner, std::size_t mid, const DiagramLeg& leg1,
                            const DiagramLeg& leg2, std::size_t cap) {
    Int n1 = outer.degree(lo), n2 = inner.degree(mid), n3 = outer.degree(hi);
    if (n1 > Int(cap) || n2 > Int(cap) || n3 > Int(cap)) return false;
    // The base stage of a symplectic tower carries the trivial involution
    // rather than a symplectic one, so replay starts past it.
    if (outer.type == AlgebraType::S && (n1 == 1 || n3 == 1)) return false;
    if (inner.type == AlgebraType::S && n2 == 1) return false;

    RationalField f;
    auto src = make_algebra(outer.type, small_degree(n1), f);
    auto mdl = make_algebra(inner.type, small_degree(n2), f);
    auto dst = make_algebra(outer.type, small_degree(n3), f);
    auto e1 = canonical_embedding(src, mdl, leg1.sig);
    auto e2 = canonical_embedding(mdl, dst, leg2.sig);
    auto comp = compose(e1, e2);
    Triple want = range_signature(outer, lo, hi);
    auto m = as_map(comp);
    if (!(comp.plan.signature() == want))
        throw std::logic_error("replay: spliced block plan disagrees with the tower signature");
    if (!(extract_signature(m) == want))
        throw std::logic_error("replay: probed signature disagrees with the tower signature");
    if (!involution_respected(m)) throw std::logic_error("replay: splice breaks the involution");
    std::mt19937_64 rng(0x7a11 + lo * 131 + mid);
    if (!homomorphism_spot_check(m, 4, rng))
        throw std::logic_error("replay: splice is not multiplicative");
    return true;
}

}  // namespace detail

inline ReplayReport replay_diagram(const IntertwinerDiagram& d,
                                   std::size_t degree_cap = kMaxOracleDegree) {
    verify_diagram(d);
    ReplayReport rep;
    std::size_t i_k = d.i1;
    for (std::size_t k = 0; k < d.down.size(); ++k) {
        bool ok = detail::replay_triangle(d.left, i_k, d.up[k].to, d.right, d.down[k].to,
                                          d.down[k], d.up[k], degree_cap);
        (ok ? rep.checked : rep.skipped)++;
        if (k + 1 < d.down.size()) {
            bool ok2 = detail::replay_triangle(d.right, d.down[k].to, d.down[k + 1].to, d.left,
                                               d.up[k].to, d.up[k], d.down[k + 1], degree_cap);
            (ok2 ? rep.checked : rep.skipped)++;
        }
        i_k = d.up[k].to;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Intertype routing: a one-component tower whose step product carries
// 2^inf embeds into a pair tower along ranges with an even step product.
// Each range A_{j_k} -> A_{j_{k+1}} with composite (L, 0, Z) factors as
//
//   A_{j_k} --(L/2, 0, 0)--> D_k --(1, 1, Z)--> A_{j_{k+1}}
//
// and the D_k form a pair tower with chain triples
// (L'/2, L'/2, Z * L'/2), which is symmetric, so the zig-zag machinery
// applies between pair towers afterwards.

struct IntertypeBridge {
    AlgebraType side_type = AlgebraType::O;
    TripleSequence pair_seq;            // the route through pair algebras
    std::vector<std::size_t> anchors;   // j_1 = 1 < j_2 < ... on the side tower
    std::vector<Triple> eta;            // A_{j_k} -> D_k, (L_k/2, 0, 0)
    std::vector<Triple> zeta;           // D_k -> A_{j_{k+1}}, (1, 1, Z_k)
};

inline IntertypeBridge intertype_bridge(const TripleSequence& side) {
    side.validate();
    if (side.type == AlgebraType::A)
        throw std::invalid_argument("bridge: input must be a one-component tower");
    if (side.characteristic == 2)
        throw std::invalid_argument("bridge: no pair route exists in characteristic 2");
    bool even_step = false;
    for (const auto& t : side.period) even_step = even_step || t.s() % 2 == 0;
    if (!even_step)
        throw std::invalid_argument("bridge: the step product needs infinitely many factors of 2");

    IntertypeBridge b;
    b.side_type = side.type;
    const std::size_t pre = side.prefix_len(), plen = side.period_len();

    // Anchors: past each even step, so every range product L is even.
    auto next_anchor = [&](std::size_t j) {
        for (std::size_t t = j; t <= j + pre + 2 * plen + 2; ++t)
            if (side.term(t).s() % 2 == 0) return t + 1;
        throw std::logic_error("bridge: even step not found despite the period check");
    };
    std::vector<std::size_t>& a = b.anchors;
    a.push_back(1);
    // The pair triple after gap m is a function of the phase of anchor m
    // inside the period, so the pair tower goes periodic at the first
    // repeated phase.
    std::map<std::size_t, std::size_t> phase_seen;  // phase -> anchor ordinal
    std::optional<std::pair<std::size_t, std::size_t>> repeat;
    for (std::size_t t = 0; !repeat || a.size() <= repeat->second + 1; ++t) {
        if (a[t] > pre && !repeat) {
            std::size_t phase = (a[t] - pre - 1) % plen;
            auto it = phase_seen.find(phase);
            if (it != phase_seen.end())
                repeat = {it->second, t};
            else
                phase_seen[phase] = t;
        }
        a.push_back(next_anchor(a[t]));
    }

    std::vector<Triple> dseq;
    for (std::size_t g = 0; g + 1 < a.size(); ++g) {
        Triple range = range_signature(side, a[g], a[g + 1]);
        Int L = range.s(), Z = range.z;
        b.eta.push_back(Triple{L / 2, 0, 0});
        b.zeta.push_back(Triple{1, 1, Z});
        if (g == 0)
            dseq.push_back(Triple{L / 2, 0, 0});
        if (g + 2 < a.size()) {
            Triple next = range_signature(side, a[g + 1], a[g + 2]);
            Int Ln = next.s();
            dseq.push_back(Triple{Ln / 2, Ln / 2, Z * Ln / 2});
        }
    }

    TripleSequence& ps = b.pair_seq;
    ps.type = AlgebraType::A;
    ps.characteristic = side.characteristic;
    // Triples dseq[m] for m >= 1 are keyed by anchor m - 1, so the period
    // spans the repeated anchor ordinals.
    auto [t1, t2] = *repeat;
    ps.prefix.assign(dseq.begin(), dseq.begin() + t1 + 1);
    ps.period.assign(dseq.begin() + t1 + 1, dseq.begin() + t2 + 1);
    ps.validate();
    return b;
}

// Full certificate: bridges for any one-component sides, then a zig-zag
// between the (possibly routed) pair towers.
struct Intertwiner {
    std::optional<IntertypeBridge> left_bridge, right_bridge;
    IntertwinerDiagram diagram;
};

inline Intertwiner build_intertwiner(const TripleSequence& a, const TripleSequence& b,
                                     const ZigZagOptions& opts = {}) {
    Verdict v = classify_sequences(a, b);
    if (v.state != Verdict::State::Isomorphic)
        throw std::invalid_argument("build_intertwiner: the towers are not isomorphic");
    Intertwiner out;
    const TripleSequence* left = &a;
    const TripleSequence* right = &b;
    if (a.type != b.type) {
        if (a.type != AlgebraType::A) {
            out.left_bridge = intertype_bridge(a);
            left = &out.left_bridge->pair_seq;
        }
        if (b.type != AlgebraType::A) {
            out.right_bridge = intertype_bridge(b);
            right = &out.right_bridge->pair_seq;
        }
    }
    out.diagram = build_diagram(*left, *right, opts);
    return out;
}

}  // namespace starlim
