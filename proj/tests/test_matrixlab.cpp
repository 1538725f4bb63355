#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "starlim/matrixlab.hpp"

using namespace starlim;

namespace {

template <class F>
Element<F> random_element(const AlgebraRef<F>& alg, std::mt19937_64& rng) {
    Element<F> x;
    x.a = random_matrix(alg.field, alg.degree, alg.degree, rng);
    if (alg.type == AlgebraType::A)
        x.b = random_matrix(alg.field, alg.degree, alg.degree, rng);
    return x;
}

Triple compose_formula(const Triple& s1, const Triple& s2) {
    return Triple{s1.l * s2.l + s1.r * s2.r, s1.r * s2.l + s1.l * s2.r,
                  s1.z * (s2.l + s2.r) + s2.z};
}

}  // namespace

TEST_CASE("matrix basics") {
    RationalField q;
    auto m = Matrix<RationalField>(q, 2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 3;
    m.at(1, 1) = 4;
    CHECK(m.rank() == 2);
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK(*inv * m == Matrix<RationalField>::identity(q, 2));

    auto sing = Matrix<RationalField>(q, 2, 2);
    sing.at(0, 0) = 1;
    sing.at(0, 1) = 2;
    sing.at(1, 0) = 2;
    sing.at(1, 1) = 4;
    CHECK(sing.rank() == 1);
    CHECK_FALSE(sing.inverse().has_value());
    auto ker = sing.kernel_basis();
    REQUIRE(ker.size() == 1);
    // A * v = 0 for the kernel vector.
    CHECK(sing.at(0, 0) * ker[0][0] + sing.at(0, 1) * ker[0][1] == 0);

    PrimeField f5(5);
    std::mt19937_64 rng(7);
    auto p = random_matrix(f5, 6, 6, rng);
    auto kb = p.kernel_basis();
    CHECK(p.rank() + kb.size() == 6);
}

TEST_CASE("involutions are anti-automorphisms of order two") {
    std::mt19937_64 rng(0x5eed0201);
    RationalField q;
    PrimeField f2(2), f3(3);

    auto check_alg = [&](auto alg) {
        for (int t = 0; t < 10; ++t) {
            auto x = random_element(alg, rng);
            auto y = random_element(alg, rng);
            CHECK(involve(alg, involve(alg, x)) == x);
            CHECK(involve(alg, elem_mul(alg, x, y)) ==
                  elem_mul(alg, involve(alg, y), involve(alg, x)));
            CHECK(involve(alg, elem_add(alg, x, y)) ==
                  elem_add(alg, involve(alg, x), involve(alg, y)));
        }
        CHECK(involve(alg, elem_one(alg)) == elem_one(alg));
    };

    check_alg(make_algebra(AlgebraType::O, 5, q));
    check_alg(make_algebra(AlgebraType::S, 6, q));
    check_alg(make_algebra(AlgebraType::A, 4, q));
    check_alg(make_algebra(AlgebraType::O, 4, f2));
    check_alg(make_algebra(AlgebraType::A, 3, f3));
    check_alg(make_adjoint_algebra(gram_jplus(q, 6)));
    check_alg(make_adjoint_algebra(gram_qminus(q, 8)));

    // The entrywise symplectic adjoint equals -J X^t J computed naively.
    for (int t = 0; t < 20; ++t) {
        std::size_t n = 2 * (1 + t % 4);
        auto x = random_matrix(q, n, n, rng);
        auto J = gram_symplectic(q, n);
        CHECK(detail::symplectic_adjoint(x) == -(J * x.transpose() * J));
    }
}

TEST_CASE("involution type of a form") {
    RationalField q;
    PrimeField f2(2);
    CHECK(involution_type(gram_identity(q, 3)) == AlgebraType::O);
    CHECK(involution_type(gram_jplus(q, 4)) == AlgebraType::O);
    CHECK(involution_type(gram_symplectic(q, 4)) == AlgebraType::S);
    CHECK(involution_type(gram_qminus(q, 6)) == AlgebraType::S);
    CHECK(involution_type(gram_qplus(q, 6)) == AlgebraType::O);

    // Characteristic 2: alternating versus not.
    CHECK(involution_type(gram_identity(f2, 3)) == AlgebraType::O);
    CHECK(involution_type(gram_jplus(f2, 4)) == AlgebraType::S);
    CHECK(involution_type(gram_qplus(f2, 4)) == AlgebraType::S);

    Matrix<RationalField> bad(q, 2, 2);
    bad.at(0, 1) = 1;  // neither symmetric nor skew
    bad.at(1, 1) = 1;
    CHECK_THROWS_AS(involution_type(bad), std::invalid_argument);
    CHECK_THROWS_AS(make_adjoint_algebra(Matrix<RationalField>(q, 2, 2)),
                    std::invalid_argument);

    CHECK(make_adjoint_algebra(gram_symplectic(q, 4)).type == AlgebraType::S);
}

TEST_CASE("algebra construction limits") {
    RationalField q;
    CHECK_THROWS_AS(make_algebra(AlgebraType::O, 0, q), std::invalid_argument);
    CHECK_THROWS_AS(make_algebra(AlgebraType::O, 65, q), std::invalid_argument);
    CHECK_THROWS_AS(make_algebra(AlgebraType::S, 5, q), std::invalid_argument);
    CHECK_NOTHROW(make_algebra(AlgebraType::S, 64, q));
}

TEST_CASE("canonical embeddings realize their signatures") {
    std::mt19937_64 rng(0x5eed0202);
    RationalField q;
    PrimeField f2(2);

    auto run = [&](auto field) {
        std::uniform_int_distribution<int> pick(0, 3);
        for (AlgebraType type : {AlgebraType::O, AlgebraType::S, AlgebraType::A}) {
            for (int t = 0; t < 40; ++t) {
                Int l = 1 + pick(rng);
                Int r = type == AlgebraType::A ? Int(pick(rng)) : Int(0);
                if (r > l) std::swap(l, r);
                Int z = pick(rng);
                std::size_t n = 1 + pick(rng) % 3;
                if (type == AlgebraType::S) {
                    n = 2 * (1 + pick(rng) % 2);
                    z = 2 * (pick(rng) % 2);
                }
                std::size_t m = static_cast<std::size_t>((l + r) * n + z);
                if (m > kMaxOracleDegree || m == 0) continue;
                auto src = make_algebra(type, n, field);
                auto dst = make_algebra(type, m, field);
                Triple sig{l, r, z};
                auto e = canonical_embedding(src, dst, sig);
                CHECK(e.plan.signature() == sig);
                CHECK(e.plan.target_degree() == m);
                auto em = as_map(e);
                CHECK(extract_signature(em) == sig);
                CHECK(involution_respected(em));
                CHECK(homomorphism_spot_check(em, 12, rng));
                CHECK(is_unital(em) == (z == 0));
            }
        }
    };
    run(q);
    run(f2);

    auto o3 = make_algebra(AlgebraType::O, 3, q);
    auto o7 = make_algebra(AlgebraType::O, 7, q);
    CHECK_THROWS_AS(canonical_embedding(o3, o7, Triple{2, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(canonical_embedding(o3, o7, Triple{1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(canonical_embedding(o3, o7, Triple{0, 0, 7}), std::invalid_argument);
}

TEST_CASE("composition matches the signature formulas") {
    // Oracle for the arithmetic composition law: compose concrete block
    // embeddings and read the signature back off the matrices.
    std::mt19937_64 rng(0x5eed0203);
    RationalField q;
    PrimeField f2(2);

    auto run = [&](auto field, AlgebraType type) {
        std::uniform_int_distribution<int> pick(0, 3);
        int done = 0;
        while (done < 60) {
            Int l1 = 1 + pick(rng), l2 = 1 + pick(rng);
            Int r1 = type == AlgebraType::A ? Int(pick(rng)) : Int(0);
            Int r2 = type == AlgebraType::A ? Int(pick(rng)) : Int(0);
            if (r1 > l1) std::swap(l1, r1);
            if (r2 > l2) std::swap(l2, r2);
            Int z1 = pick(rng), z2 = pick(rng);
            std::size_t n1 = 1 + pick(rng) % 2;
            if (type == AlgebraType::S) {
                n1 = 2;
                z1 = 2 * (z1 % 2);
                z2 = 2 * (z2 % 2);
            }
            Triple s1{l1, r1, z1}, s2{l2, r2, z2};
            Int n2 = s1.s() * n1 + s1.z;
            Int n3 = s2.s() * n2 + s2.z;
            if (n3 > Int(kMaxOracleDegree)) continue;
            ++done;
            auto a1 = make_algebra(type, n1, field);
            auto a2 = make_algebra(type, static_cast<std::size_t>(n2), field);
            auto a3 = make_algebra(type, static_cast<std::size_t>(n3), field);
            auto e1 = canonical_embedding(a1, a2, s1);
            auto e2 = canonical_embedding(a2, a3, s2);
            auto comp = compose(e1, e2);
            Triple expect = compose_formula(s1, s2);
            CHECK(comp.plan.signature() == expect);
            CHECK(extract_signature(as_map(comp)) == expect);
            // The spliced plan is the actual map composition.
            for (int t = 0; t < 3; ++t) {
                auto x = random_element(a1, rng);
                CHECK(apply(comp, x) == apply(e2, apply(e1, x)));
            }
            CHECK(involution_respected(as_map(comp)));
        }
    };
    for (AlgebraType type : {AlgebraType::O, AlgebraType::S, AlgebraType::A}) {
        run(q, type);
        run(f2, type);
    }

    // Worked example: (2,1,1) then (1,1,0) gives (3,3,2).
    CHECK(compose_formula(Triple{2, 1, 1}, Triple{1, 1, 0}) == Triple{3, 3, 2});
    RationalField qq;
    auto a1 = make_algebra(AlgebraType::A, 1, qq);
    auto a2 = make_algebra(AlgebraType::A, 4, qq);
    auto a3 = make_algebra(AlgebraType::A, 8, qq);
    auto chain = compose(canonical_embedding(a1, a2, Triple{2, 1, 1}),
                         canonical_embedding(a2, a3, Triple{1, 1, 0}));
    CHECK(chain.plan.signature() == Triple{3, 3, 2});
}

TEST_CASE("complementary idempotent pair") {
    RationalField q;
    std::mt19937_64 rng(0x5eed0204);

    for (auto alg : {make_algebra(AlgebraType::A, 5, q), make_algebra(AlgebraType::S, 6, q)}) {
        auto [f, g] = fg_idempotents(alg);
        CHECK(elem_add(alg, f, g) == elem_one(alg));
        CHECK(elem_mul(alg, f, g) == elem_zero(alg));
        CHECK(involve(alg, f) == g);
        CHECK(elem_mul(alg, f, f) == f);
    }

    auto hyp = make_adjoint_algebra(gram_jplus(q, 8));
    CHECK(hyp.type == AlgebraType::O);
    auto [f, g] = fg_idempotents(hyp);
    CHECK(involve(hyp, f) == g);
    CHECK(elem_add(hyp, f, g) == elem_one(hyp));

    // Plain transpose admits no such pair over the rationals.
    CHECK_THROWS_AS(fg_idempotents(make_algebra(AlgebraType::O, 4, q)),
                    std::invalid_argument);

    // In characteristic 2 the hyperbolic form is alternating, so the pair
    // lives in a type S algebra.
    PrimeField f2(2);
    auto hyp2 = make_adjoint_algebra(gram_jplus(f2, 4));
    CHECK(hyp2.type == AlgebraType::S);
    CHECK_NOTHROW(fg_idempotents(hyp2));
}

TEST_CASE("corner embedding") {
    std::mt19937_64 rng(0x5eed0205);
    RationalField q;
    for (auto src : {make_algebra(AlgebraType::O, 3, q), make_algebra(AlgebraType::S, 4, q)}) {
        auto e = corner_embedding(src, src.degree + 2);
        CHECK(extract_signature(e) == Triple{1, 0, 2});
        CHECK(involution_respected(e));
        CHECK(homomorphism_spot_check(e, 20, rng));
        CHECK_FALSE(is_unital(e));
        auto full = corner_embedding(src, src.degree);
        CHECK(is_unital(full));
        CHECK(extract_signature(full) == Triple{1, 0, 0});
    }
    CHECK_THROWS_AS(corner_embedding(make_algebra(AlgebraType::A, 2, q), 4),
                    std::invalid_argument);
}

TEST_CASE("factorization through a pair algebra") {
    std::mt19937_64 rng(0x5eed0206);
    RationalField q;

    auto verify = [&](AlgebraType type, std::size_t n, Int l, Int z) {
        auto src = make_algebra(type, n, q);
        auto cert = factor_through_pair(src, Triple{l, 0, z});
        CHECK(cert.mid.type == AlgebraType::A);
        CHECK(cert.mid.degree == static_cast<std::size_t>(l / 2) * n);
        CHECK(cert.target.type == type);
        CHECK(extract_signature(cert.eta) == Triple{l / 2, 0, 0});
        CHECK(extract_signature(cert.zeta) == Triple{1, 1, z});
        CHECK(involution_respected(cert.eta));
        CHECK(involution_respected(cert.zeta));
        CHECK(homomorphism_spot_check(cert.eta, 10, rng));
        CHECK(homomorphism_spot_check(cert.zeta, 10, rng));
        // Composite equals the straight block map of signature (l, 0, z).
        for (int t = 0; t < 4; ++t) {
            auto x = random_element(src, rng);
            auto through = cert.zeta.map(cert.eta.map(x));
            Matrix<RationalField> direct(q, cert.target.degree, cert.target.degree);
            for (Int k = 0; k < l; ++k)
                direct.set_block(static_cast<std::size_t>(k) * n,
                                 static_cast<std::size_t>(k) * n, x.a);
            CHECK(through.a == direct);
        }
        // The composite respects the source and target involutions.
        MapEmbedding<RationalField> comp{
            src, cert.target,
            [&cert](const Element<RationalField>& x) { return cert.zeta.map(cert.eta.map(x)); }};
        CHECK(involution_respected(comp));
        CHECK(extract_signature(comp) == Triple{l, 0, z});
    };

    verify(AlgebraType::O, 3, 2, 0);
    verify(AlgebraType::O, 2, 4, 3);
    verify(AlgebraType::O, 1, 6, 2);
    verify(AlgebraType::S, 2, 2, 0);
    verify(AlgebraType::S, 2, 4, 2);
    verify(AlgebraType::S, 4, 2, 4);

    auto o3 = make_algebra(AlgebraType::O, 3, q);
    CHECK_THROWS_AS(factor_through_pair(o3, Triple{3, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(factor_through_pair(o3, Triple{2, 1, 0}), std::invalid_argument);
    auto s2 = make_algebra(AlgebraType::S, 2, q);
    CHECK_THROWS_AS(factor_through_pair(s2, Triple{2, 0, 1}), std::invalid_argument);

    // Characteristic 2, type O, z = 0: the target form is alternating, so
    // the detour through the pair algebra leaves the orthogonal class.
    PrimeField f2(2);
    auto o2 = make_algebra(AlgebraType::O, 2, f2);
    auto cert = factor_through_pair(o2, Triple{2, 0, 0});
    CHECK(cert.target.type == AlgebraType::S);
    CHECK(involution_respected(cert.zeta));
}

TEST_CASE("characteristic 2 alternating evidence") {
    auto rep2 = char2_alternating_check(2, 0, 1);
    CHECK(rep2.pairs_checked > 0);
    CHECK(rep2.all_alternating);

    auto rep4 = char2_alternating_check(4, 100, 0xc0ffee);
    CHECK(rep4.pairs_checked > 0);
    CHECK(rep4.all_alternating);

    auto rep6 = char2_alternating_check(6, 50, 0xfeedface);
    CHECK(rep6.pairs_checked > 0);
    CHECK(rep6.all_alternating);

    CHECK_THROWS_AS(char2_alternating_check(3, 1, 0), std::invalid_argument);
}
