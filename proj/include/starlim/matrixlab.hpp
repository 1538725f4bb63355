#pragma once

// Concrete matrix realizations of the involution algebras at desk scale
// (degree <= 64). Everything here exists to check the combinatorial layer
// against honest linear algebra: canonical block embeddings, signature
// extraction by rank, adjoint involutions of bilinear forms, the
// complementary idempotent pair, the corner embedding into a pair algebra,
// and the even-signature factorization through a pair algebra.
//
// Conventions. An algebra is a matrix algebra M_n (types O and S) or a
// pair M_n (+) M_n (type A) with one of the involutions
//   transpose            X -> X^t                        (type O)
//   symplectic           X -> -J X^t J                   (type S, J the
//                        block-diagonal [[0,1],[-1,0]] form)
//   swap-transpose       (X, Y) -> (Y^t, X^t)            (type A)
//   adjoint of a form B  X -> B^{-1} X^t B               (O or S by the
//                        symmetry class of B)
// A canonical embedding of signature (l, r, z) places l straight copies,
// r partner-swapped copies (type A) and a z-by-z zero block on the
// diagonal.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "seqspec.hpp"

namespace starlim {

inline constexpr std::size_t kMaxOracleDegree = 64;

enum class InvolutionKind { Transpose, Symplectic, Swap, Adjoint };

template <class F>
struct AlgebraRef {
    AlgebraType type = AlgebraType::O;
    std::size_t degree = 1;  // matrix size (per component for type A)
    InvolutionKind kind = InvolutionKind::Transpose;
    F field{};
    std::optional<Matrix<F>> gram;      // Adjoint only
    std::optional<Matrix<F>> gram_inv;  // cached inverse
};

template <class F>
struct Element {
    Matrix<F> a, b;  // b is used by type A only

    bool operator==(const Element& o) const { return a == o.a && b == o.b; }
};

// ---------------------------------------------------------------------------
// Canonical bilinear forms.

template <class F>
Matrix<F> gram_identity(const F& f, std::size_t n) {
    return Matrix<F>::identity(f, n);
}

// Block-diagonal [[0,1],[-1,0]]; the symplectic reference form.
template <class F>
Matrix<F> gram_symplectic(const F& f, std::size_t n) {
    if (n % 2) throw std::invalid_argument("symplectic form needs even degree");
    Matrix<F> m(f, n, n);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        m.at(k, k + 1) = f.one();
        m.at(k + 1, k) = f.neg(f.one());
    }
    return m;
}

// Block-diagonal [[0,1],[1,0]]; the hyperbolic symmetric form.
template <class F>
Matrix<F> gram_jplus(const F& f, std::size_t n) {
    if (n % 2) throw std::invalid_argument("hyperbolic form needs even degree");
    Matrix<F> m(f, n, n);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        m.at(k, k + 1) = f.one();
        m.at(k + 1, k) = f.one();
    }
    return m;
}

// [[0, I],[I, 0]] and [[0, I],[-I, 0]] in half-blocks.
template <class F>
Matrix<F> gram_qplus(const F& f, std::size_t n) {
    if (n % 2) throw std::invalid_argument("half-block form needs even degree");
    Matrix<F> m(f, n, n);
    std::size_t h = n / 2;
    for (std::size_t i = 0; i < h; ++i) {
        m.at(i, h + i) = f.one();
        m.at(h + i, i) = f.one();
    }
    return m;
}

template <class F>
Matrix<F> gram_qminus(const F& f, std::size_t n) {
    if (n % 2) throw std::invalid_argument("half-block form needs even degree");
    Matrix<F> m(f, n, n);
    std::size_t h = n / 2;
    for (std::size_t i = 0; i < h; ++i) {
        m.at(i, h + i) = f.one();
        m.at(h + i, i) = f.neg(f.one());
    }
    return m;
}

// ---------------------------------------------------------------------------
// Algebra construction.

template <class F>
AlgebraRef<F> make_algebra(AlgebraType type, std::size_t degree, const F& field) {
    if (degree == 0 || degree > kMaxOracleDegree)
        throw std::invalid_argument("algebra degree out of range (1..64)");
    AlgebraRef<F> a;
    a.type = type;
    a.degree = degree;
    a.field = field;
    switch (type) {
        case AlgebraType::O: a.kind = InvolutionKind::Transpose; break;
        case AlgebraType::S:
            if (degree % 2) throw std::invalid_argument("symplectic algebra needs even degree");
            a.kind = InvolutionKind::Symplectic;
            break;
        case AlgebraType::A: a.kind = InvolutionKind::Swap; break;
    }
    return a;
}

// Classifies the involution X -> B^{-1} X^t B of an invertible form B.
// Away from characteristic 2 the form is symmetric (type O) or skew
// (type S); in characteristic 2 the split is alternating versus not.
template <class F>
AlgebraType involution_type(const Matrix<F>& gram) {
    const F& f = gram.field();
    if (gram.rows() != gram.cols()) throw std::invalid_argument("form must be square");
    if (f.characteristic() == 2) {
        if (!gram.is_symmetric())
            throw std::invalid_argument("form must be symmetric in characteristic 2");
        return gram.zero_diagonal() ? AlgebraType::S : AlgebraType::O;
    }
    if (gram.is_skew()) return AlgebraType::S;
    if (gram.is_symmetric()) return AlgebraType::O;
    throw std::invalid_argument("form must be symmetric or skew");
}

template <class F>
AlgebraRef<F> make_adjoint_algebra(const Matrix<F>& gram) {
    if (gram.rows() > kMaxOracleDegree)
        throw std::invalid_argument("algebra degree out of range (1..64)");
    auto inv = gram.inverse();
    if (!inv) throw std::invalid_argument("form must be invertible");
    AlgebraRef<F> a;
    a.type = involution_type(gram);
    a.degree = gram.rows();
    a.kind = InvolutionKind::Adjoint;
    a.field = gram.field();
    a.gram = gram;
    a.gram_inv = std::move(*inv);
    return a;
}

// ---------------------------------------------------------------------------
// Elements.

template <class F>
Element<F> elem_zero(const AlgebraRef<F>& alg) {
    Matrix<F> z(alg.field, alg.degree, alg.degree);
    if (alg.type == AlgebraType::A) return {z, z};
    return {z, Matrix<F>{}};
}

template <class F>
Element<F> elem_one(const AlgebraRef<F>& alg) {
    auto id = Matrix<F>::identity(alg.field, alg.degree);
    if (alg.type == AlgebraType::A) return {id, id};
    return {id, Matrix<F>{}};
}

// Matrix unit; component selects the pair side for type A.
template <class F>
Element<F> elem_unit(const AlgebraRef<F>& alg, std::size_t i, std::size_t j, int component = 0) {
    auto u = Matrix<F>::unit(alg.field, alg.degree, i, j);
    Matrix<F> z(alg.field, alg.degree, alg.degree);
    if (alg.type == AlgebraType::A)
        return component == 0 ? Element<F>{u, z} : Element<F>{z, u};
    if (component != 0) throw std::invalid_argument("component 1 requires type A");
    return {u, Matrix<F>{}};
}

template <class F>
Element<F> elem_add(const AlgebraRef<F>& alg, const Element<F>& x, const Element<F>& y) {
    if (alg.type == AlgebraType::A) return {x.a + y.a, x.b + y.b};
    return {x.a + y.a, Matrix<F>{}};
}

template <class F>
Element<F> elem_mul(const AlgebraRef<F>& alg, const Element<F>& x, const Element<F>& y) {
    if (alg.type == AlgebraType::A) return {x.a * y.a, x.b * y.b};
    return {x.a * y.a, Matrix<F>{}};
}

namespace detail {

// -J X^t J entrywise: rows and columns act in mates (2k, 2k+1) with signs.
template <class F>
Matrix<F> symplectic_adjoint(const Matrix<F>& x) {
    const F& f = x.field();
    std::size_t n = x.rows();
    Matrix<F> y(f, n, n);
    auto mate = [](std::size_t i) { return i ^ 1u; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto v = x.at(mate(j), mate(i));
            bool flip = ((i ^ j) & 1u) != 0;  // opposite parities flip sign
            y.at(i, j) = flip ? f.neg(v) : v;
        }
    return y;
}

}  // namespace detail

template <class F>
Element<F> involve(const AlgebraRef<F>& alg, const Element<F>& x) {
    switch (alg.kind) {
        case InvolutionKind::Transpose: return {x.a.transpose(), Matrix<F>{}};
        case InvolutionKind::Symplectic: return {detail::symplectic_adjoint(x.a), Matrix<F>{}};
        case InvolutionKind::Swap: return {x.b.transpose(), x.a.transpose()};
        case InvolutionKind::Adjoint:
            return {*alg.gram_inv * x.a.transpose() * *alg.gram, Matrix<F>{}};
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Canonical block embeddings.

enum class Slot : std::uint8_t { Straight, Partner, Zero };

struct BlockPlan {
    std::size_t src_degree = 1;
    std::vector<Slot> slots;  // Zero slots are 1 wide, others src_degree wide

    std::size_t width(Slot s) const { return s == Slot::Zero ? 1 : src_degree; }

    std::size_t target_degree() const {
        std::size_t n = 0;
        for (auto s : slots) n += width(s);
        return n;
    }

    Triple signature() const {
        Triple t{0, 0, 0};
        for (auto s : slots) {
            if (s == Slot::Straight) ++t.l;
            else if (s == Slot::Partner) ++t.r;
            else ++t.z;
        }
        return t;
    }
};

template <class F>
struct CanonicalEmbedding {
    AlgebraRef<F> src, dst;
    BlockPlan plan;
};

template <class F>
CanonicalEmbedding<F> canonical_embedding(const AlgebraRef<F>& src, const AlgebraRef<F>& dst,
                                          const Triple& sig) {
    if (src.type != dst.type) throw std::invalid_argument("embedding endpoints differ in type");
    if (!(src.field == dst.field)) throw std::invalid_argument("embedding endpoints differ in field");
    if (src.kind == InvolutionKind::Adjoint || dst.kind == InvolutionKind::Adjoint)
        throw std::invalid_argument("canonical embeddings connect canonical realizations");
    if (sig.l < 0 || sig.r < 0 || sig.z < 0 || sig.s() == 0)
        throw std::invalid_argument("embedding signature must have l + r >= 1");
    if (sig.r != 0 && src.type != AlgebraType::A)
        throw std::invalid_argument("partner copies require type A");
    if (src.type == AlgebraType::S && sig.z % 2 != 0)
        throw std::invalid_argument("symplectic embedding needs even z");
    if (Int(dst.degree) != sig.s() * Int(src.degree) + sig.z)
        throw std::invalid_argument("embedding signature does not match degrees");
    CanonicalEmbedding<F> e{src, dst, {}};
    e.plan.src_degree = src.degree;
    for (Int i = 0; i < sig.l; ++i) e.plan.slots.push_back(Slot::Straight);
    for (Int i = 0; i < sig.r; ++i) e.plan.slots.push_back(Slot::Partner);
    for (Int i = 0; i < sig.z; ++i) e.plan.slots.push_back(Slot::Zero);
    return e;
}

namespace detail {

template <class F>
Matrix<F> place_blocks(const BlockPlan& plan, const F& f, const Matrix<F>& straight,
                       const Matrix<F>& partner) {
    std::size_t n = plan.target_degree();
    Matrix<F> out(f, n, n);
    std::size_t pos = 0;
    for (auto s : plan.slots) {
        if (s == Slot::Straight) out.set_block(pos, pos, straight);
        else if (s == Slot::Partner) out.set_block(pos, pos, partner);
        pos += plan.width(s);
    }
    return out;
}

}  // namespace detail

template <class F>
Element<F> apply(const CanonicalEmbedding<F>& e, const Element<F>& x) {
    if (e.src.type == AlgebraType::A) {
        return {detail::place_blocks(e.plan, e.src.field, x.a, x.b),
                detail::place_blocks(e.plan, e.src.field, x.b, x.a)};
    }
    Matrix<F> none;
    return {detail::place_blocks(e.plan, e.src.field, x.a, x.a), none};
}

// Splices the inner plan into each block of the outer one; a partner block
// receives the swapped inner plan because it carries the second component.
template <class F>
CanonicalEmbedding<F> compose(const CanonicalEmbedding<F>& e1, const CanonicalEmbedding<F>& e2) {
    if (e1.dst.degree != e2.src.degree || e1.dst.type != e2.src.type)
        throw std::invalid_argument("composition endpoints do not match");
    CanonicalEmbedding<F> r{e1.src, e2.dst, {}};
    r.plan.src_degree = e1.plan.src_degree;
    for (auto s : e2.plan.slots) {
        if (s == Slot::Zero) {
            r.plan.slots.push_back(Slot::Zero);
            continue;
        }
        for (auto inner : e1.plan.slots) {
            if (s == Slot::Partner && inner != Slot::Zero)
                r.plan.slots.push_back(inner == Slot::Straight ? Slot::Partner : Slot::Straight);
            else
                r.plan.slots.push_back(inner);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// General embeddings as plain maps, and signature extraction.

template <class F>
struct MapEmbedding {
    AlgebraRef<F> src, dst;
    std::function<Element<F>(const Element<F>&)> map;
};

template <class F>
MapEmbedding<F> as_map(const CanonicalEmbedding<F>& e) {
    return {e.src, e.dst, [e](const Element<F>& x) { return apply(e, x); }};
}

// The restriction through an embedding decomposes into straight copies,
// partner copies and a null summand. The first matrix unit acts with rank
// one on each straight copy and annihilates the partner copies, so its
// image has rank l; probing with the second-component unit counts r.
template <class F>
Triple extract_signature(const MapEmbedding<F>& e) {
    Element<F> y = e.map(elem_unit(e.src, 0, 0, 0));
    Int l = static_cast<long long>(y.a.rank());
    Int r = 0;
    if (e.src.type == AlgebraType::A)
        r = static_cast<long long>(e.map(elem_unit(e.src, 0, 0, 1)).a.rank());
    Int z = Int(e.dst.degree) - (l + r) * Int(e.src.degree);
    if (z < 0) throw std::invalid_argument("map is not an embedding of matrix algebras");
    return Triple{l, r, z};
}

// f(u*) == f(u)* over every source matrix unit.
template <class F>
bool involution_respected(const MapEmbedding<F>& e) {
    std::size_t n = e.src.degree;
    int comps = e.src.type == AlgebraType::A ? 2 : 1;
    for (int c = 0; c < comps; ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Element<F> u = elem_unit(e.src, i, j, c);
                if (!(e.map(involve(e.src, u)) == involve(e.dst, e.map(u)))) return false;
            }
    return true;
}

// Samples unit products f(E_ij) f(E_kl) == [j == k] f(E_il) and checks
// that the image of the identity is an idempotent.
template <class F>
bool homomorphism_spot_check(const MapEmbedding<F>& e, int samples, std::mt19937_64& rng) {
    std::size_t n = e.src.degree;
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> comp(0, e.src.type == AlgebraType::A ? 1 : 0);
    for (int t = 0; t < samples; ++t) {
        std::size_t i = idx(rng), j = idx(rng), k = idx(rng), l = idx(rng);
        int c = comp(rng);
        Element<F> x = elem_unit(e.src, i, j, c);
        Element<F> prod = elem_mul(e.dst, e.map(x), e.map(elem_unit(e.src, k, l, c)));
        Element<F> expect = j == k ? e.map(elem_unit(e.src, i, l, c)) : elem_zero(e.dst);
        if (!(prod == expect)) return false;
        // Units in opposite components multiply to zero.
        if (e.src.type == AlgebraType::A) {
            Element<F> other = elem_unit(e.src, k, l, 1 - c);
            if (!(elem_mul(e.dst, e.map(x), e.map(other)) == elem_zero(e.dst))) return false;
        }
    }
    Element<F> p = e.map(elem_one(e.src));
    return elem_mul(e.dst, p, p) == p;
}

template <class F>
bool is_unital(const MapEmbedding<F>& e) {
    return e.map(elem_one(e.src)) == elem_one(e.dst);
}

// ---------------------------------------------------------------------------
// The complementary idempotent pair: f + g = 1, fg = gf = 0, f* = g.
// Available for pair algebras, canonical symplectic algebras, and adjoint
// algebras of the hyperbolic symmetric form. It does not exist for the
// plain transpose over the rationals (f f^t = 0 forces f = 0) nor for
// type O in characteristic 2.

template <class F>
std::pair<Element<F>, Element<F>> fg_idempotents(const AlgebraRef<F>& alg) {
    const F& f = alg.field;
    auto build = [&]() -> std::pair<Element<F>, Element<F>> {
        if (alg.type == AlgebraType::A) {
            auto id = Matrix<F>::identity(f, alg.degree);
            Matrix<F> zero(f, alg.degree, alg.degree);
            return {{id, zero}, {zero, id}};
        }
        bool hyperbolic = alg.kind == InvolutionKind::Adjoint && alg.gram &&
                          *alg.gram == gram_jplus(f, alg.degree);
        if (alg.kind == InvolutionKind::Symplectic || hyperbolic) {
            Matrix<F> even(f, alg.degree, alg.degree), odd(f, alg.degree, alg.degree);
            for (std::size_t i = 0; i < alg.degree; ++i)
                (i % 2 ? odd : even).at(i, i) = f.one();
            return {{even, Matrix<F>{}}, {odd, Matrix<F>{}}};
        }
        throw std::invalid_argument(
            "no complementary idempotent pair for this realization (use the hyperbolic form for type O)");
    };
    auto [fe, ge] = build();
    // Defining identities, kept as cheap construction-time checks.
    if (!(elem_add(alg, fe, ge) == elem_one(alg)) ||
        !(elem_mul(alg, fe, ge) == elem_zero(alg)) ||
        !(elem_mul(alg, ge, fe) == elem_zero(alg)) ||
        !(involve(alg, fe) == ge))
        throw std::logic_error("idempotent pair construction broke its contract");
    return {fe, ge};
}

// ---------------------------------------------------------------------------
// Corner embedding of a one-component algebra into a pair algebra:
// Z -> (Z, (Z^alpha)^t) padded to the target degree. Signature (1, 0, m-n).

template <class F>
MapEmbedding<F> corner_embedding(const AlgebraRef<F>& src, std::size_t target_degree) {
    if (src.type == AlgebraType::A)
        throw std::invalid_argument("corner embedding starts from a one-component algebra");
    if (target_degree < src.degree)
        throw std::invalid_argument("corner embedding cannot shrink the degree");
    AlgebraRef<F> dst = make_algebra(AlgebraType::A, target_degree, src.field);
    AlgebraRef<F> s = src;
    auto map = [s, dst](const Element<F>& x) {
        Matrix<F> a(dst.field, dst.degree, dst.degree);
        Matrix<F> b(dst.field, dst.degree, dst.degree);
        a.set_block(0, 0, x.a);
        b.set_block(0, 0, involve(s, x).a.transpose());
        return Element<F>{a, b};
    };
    return {src, dst, map};
}

// ---------------------------------------------------------------------------
// Factorization of an even one-component signature (l, 0, z) through a
// pair algebra. Produces the middle algebra D of degree (l/2)*n, the two
// legs, and an adjoint realization of the target whose involution has the
// same type as the source; the composite of the legs is literally the
// canonical block embedding of signature (l, 0, z) into that realization.

template <class F>
struct FactorThroughA {
    AlgebraRef<F> mid;     // pair algebra of degree (l/2) * n
    MapEmbedding<F> eta;   // src -> mid, signature (l/2, 0, 0)
    MapEmbedding<F> zeta;  // mid -> target, signature (1, 1, z)
    AlgebraRef<F> target;  // adjoint realization, same type as src
    Triple eta_sig, zeta_sig;
};

template <class F>
FactorThroughA<F> factor_through_pair(const AlgebraRef<F>& src, const Triple& sig) {
    if (src.type == AlgebraType::A)
        throw std::invalid_argument("factorization starts from a one-component algebra");
    if (src.kind == InvolutionKind::Adjoint)
        throw std::invalid_argument("factorization starts from a canonical realization");
    if (sig.r != 0 || sig.l <= 0 || sig.l % 2 != 0 || sig.z < 0)
        throw std::invalid_argument("factorization needs a signature (l, 0, z) with l even");
    if (src.type == AlgebraType::S && sig.z % 2 != 0)
        throw std::invalid_argument("symplectic factorization needs even z");
    const F& f = src.field;
    const std::size_t n = src.degree;
    const std::size_t m = static_cast<std::size_t>(sig.l) / 2;
    const std::size_t zz = static_cast<std::size_t>(sig.z);
    const std::size_t mid_deg = m * n;
    const std::size_t out_deg = 2 * mid_deg + zz;
    if (out_deg > kMaxOracleDegree)
        throw std::invalid_argument("factorization target exceeds the degree cap");

    AlgebraRef<F> mid = make_algebra(AlgebraType::A, mid_deg, f);
    AlgebraRef<F> s = src;

    // eta: M -> (diag(M x m), diag(theta(M) x m)) with theta(M) = (M^alpha)^t.
    auto eta_map = [s, mid, m, n](const Element<F>& x) {
        Matrix<F> a(mid.field, mid.degree, mid.degree), b(mid.field, mid.degree, mid.degree);
        Matrix<F> th = involve(s, x).a.transpose();
        for (std::size_t k = 0; k < m; ++k) {
            a.set_block(k * n, k * n, x.a);
            b.set_block(k * n, k * n, th);
        }
        return Element<F>{a, b};
    };

    // C conjugates the second block so that the composite comes out straight.
    Matrix<F> C = Matrix<F>::identity(f, mid_deg);
    if (src.type == AlgebraType::S) {
        C = Matrix<F>(f, mid_deg, mid_deg);
        auto J = gram_symplectic(f, n);
        for (std::size_t k = 0; k < m; ++k) C.set_block(k * n, k * n, J);
    }
    auto Cinv = *C.inverse();

    // Target form G = [[0, C^{-1}],[eps C^{-t}, 0]] (+) H_z, eps by type.
    Matrix<F> G(f, out_deg, out_deg);
    Matrix<F> Ct_inv = *C.transpose().inverse();
    G.set_block(0, mid_deg, Cinv);
    G.set_block(mid_deg, 0, src.type == AlgebraType::S ? -Ct_inv : Ct_inv);
    Matrix<F> H = src.type == AlgebraType::S ? gram_symplectic(f, zz) : gram_identity(f, zz);
    G.set_block(2 * mid_deg, 2 * mid_deg, H);
    AlgebraRef<F> target = make_adjoint_algebra(G);
    // Away from characteristic 2 the target form always matches the source
    // type. In characteristic 2 a type O source with z = 0 yields an
    // alternating form, i.e. the pair detour leaves the orthogonal class;
    // the certificate reports the realized type.
    if (f.characteristic() != 2 && target.type != src.type)
        throw std::logic_error("factorization target form has the wrong involution type");

    auto zeta_map = [target, C, Cinv, mid_deg](const Element<F>& x) {
        Matrix<F> out(target.field, target.degree, target.degree);
        out.set_block(0, 0, x.a);
        out.set_block(mid_deg, mid_deg, C * x.b * Cinv);
        return Element<F>{out, Matrix<F>{}};
    };

    FactorThroughA<F> r{mid,
                        {src, mid, eta_map},
                        {mid, target, zeta_map},
                        target,
                        Triple{Int(static_cast<long long>(m)), 0, 0},
                        Triple{1, 1, sig.z}};

    // Construction-time sanity: the composite is the straight block map.
    Element<F> u = elem_unit(src, 0, 0, 0);
    Element<F> through = r.zeta.map(r.eta.map(u));
    Matrix<F> direct(f, out_deg, out_deg);
    for (Int k = 0; k < sig.l; ++k)
        direct.set_block(static_cast<std::size_t>(k) * n, static_cast<std::size_t>(k) * n, u.a);
    if (!(through.a == direct))
        throw std::logic_error("factorization composite is not the straight block map");
    return r;
}

// ---------------------------------------------------------------------------
// Random sampling helpers (used by the oracle suites).

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Matrix<F> m(f, rows, cols);
    long long range = f.characteristic() == 0 ? 5 : f.characteristic();
    std::uniform_int_distribution<long long> pick(0, range - 1);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = f.from_int(pick(rng) - (f.characteristic() == 0 ? 2 : 0));
    return m;
}

template <class F>
Matrix<F> random_invertible(const F& f, std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        auto m = random_matrix(f, n, n, rng);
        if (m.is_invertible()) return m;
    }
}

// Random idempotent of rank k, as a conjugate of diag(I_k, 0).
template <class F>
Matrix<F> random_idempotent(const F& f, std::size_t n, std::size_t k, std::mt19937_64& rng) {
    auto p = random_invertible(f, n, rng);
    Matrix<F> d(f, n, n);
    for (std::size_t i = 0; i < k; ++i) d.at(i, i) = f.one();
    return p * d * *p.inverse();
}

// ---------------------------------------------------------------------------
// Characteristic-2 evidence: any invertible symmetric form over GF(2)
// admitting an idempotent f with f^alpha = 1 - f must be alternating
// (zero diagonal). Exhaustive at n = 2, randomized at larger even n by
// sampling idempotents of half rank and solving f^t B + B f = B for
// symmetric B.

struct Char2Report {
    long long pairs_checked = 0;
    bool all_alternating = true;
};

inline Char2Report char2_alternating_check(std::size_t n, int trials, std::uint64_t seed) {
    if (n % 2) throw std::invalid_argument("half-rank idempotents need even degree");
    PrimeField f2(2);
    using M = Matrix<PrimeField>;
    Char2Report rep;
    auto consider = [&](const M& b, const M& idem) {
        auto binv = b.inverse();
        if (!binv) return;
        M alpha = *binv * idem.transpose() * b;
        M complement = M::identity(f2, n) - idem;
        if (!(alpha == complement)) return;
        ++rep.pairs_checked;
        if (!b.zero_diagonal()) rep.all_alternating = false;
    };
    if (n == 2) {
        // All symmetric forms and all idempotents, exhaustively.
        for (unsigned bits = 0; bits < 8; ++bits) {
            M b(f2, 2, 2);
            b.at(0, 0) = bits & 1;
            b.at(0, 1) = (bits >> 1) & 1;
            b.at(1, 0) = (bits >> 1) & 1;
            b.at(1, 1) = (bits >> 2) & 1;
            for (unsigned e = 0; e < 16; ++e) {
                M m(f2, 2, 2);
                m.at(0, 0) = e & 1;
                m.at(0, 1) = (e >> 1) & 1;
                m.at(1, 0) = (e >> 2) & 1;
                m.at(1, 1) = (e >> 3) & 1;
                if (!(m * m == m)) continue;
                consider(b, m);
            }
        }
        return rep;
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        M idem = random_idempotent(f2, n, n / 2, rng);
        // Linear system over the n(n+1)/2 entries of a symmetric B:
        // (f^t B + B f - B)_{ij} = 0 for i <= j (the system is symmetric).
        std::size_t vars = n * (n + 1) / 2;
        auto vid = [n](std::size_t i, std::size_t j) {
            if (i > j) std::swap(i, j);
            return i * n - i * (i - 1) / 2 + (j - i);
        };
        std::size_t eqs = vars;
        M sys(f2, eqs, vars);
        // Coefficient of B_{kl} in (f^t B + B f - B)_{ij}:
        //   f_{ki} [l = j] + f_{lj} [k = i] - [k = i][l = j], symmetrized.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                std::size_t row = vid(i, j);
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        std::uint64_t coef = 0;
                        if (l == j) coef ^= idem.at(k, i);
                        if (k == i) coef ^= idem.at(l, j);
                        if (k == i && l == j) coef ^= 1;
                        if (coef)
                            sys.at(row, vid(k, l)) = f2.add(sys.at(row, vid(k, l)), coef);
                    }
            }
        auto basis = sys.kernel_basis();
        if (basis.empty()) continue;
        std::uniform_int_distribution<int> bit(0, 1);
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::vector<std::uint64_t> v(vars, 0);
            for (const auto& kvec : basis)
                if (bit(rng))
                    for (std::size_t x = 0; x < vars; ++x) v[x] ^= kvec[x];
            M b(f2, n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    b.at(i, j) = v[vid(i, j)];
                    b.at(j, i) = v[vid(i, j)];
                }
            if (b.is_zero()) continue;
            consider(b, idem);
        }
    }
    return rep;
}

}  // namespace starlim
