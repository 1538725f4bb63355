#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "starlim/supernatural.hpp"

using namespace starlim;

TEST_CASE("primality and factorization") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(97));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));  // Carmichael
    CHECK_FALSE(is_prime_u64(0));
    CHECK(is_prime_u64(2305843009213693951ull));   // 2^61 - 1
    CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(18446744073709551615ull));

    auto f = factor_u64(360);
    REQUIRE(f.size() == 3);
    CHECK(f[2] == 3);
    CHECK(f[3] == 2);
    CHECK(f[5] == 1);

    // Semiprime with two large factors exercises the rho path.
    std::uint64_t a = 4294967291ull, b = 4294967279ull;
    auto g = factor_u64(a * b);
    REQUIRE(g.size() == 2);
    CHECK(g[b] == 1);
    CHECK(g[a] == 1);
}

TEST_CASE("construction and canonical form") {
    auto s = sn_from_u64(12);
    CHECK(s.finite == std::map<std::uint64_t, std::uint64_t>{{2, 2}, {3, 1}});
    CHECK(s.infinite.empty());
    CHECK(sn_value(s) == 12);

    CHECK_THROWS_AS(sn_from_u64(0), SchemaError);
    CHECK_THROWS_AS(sn_make({{4, 1}}, {}), SchemaError);
    CHECK_THROWS_AS(sn_make({{3, 0}}, {}), SchemaError);
    CHECK_THROWS_AS(sn_make({{3, 1}}, {3}), SchemaError);
    CHECK_THROWS_AS(sn_make({}, {9}), SchemaError);

    auto t = sn_make({{3, 2}}, {2});
    CHECK_FALSE(sn_is_finite(t));
    CHECK_THROWS_AS(sn_value(t), std::invalid_argument);
}

TEST_CASE("text form round trip") {
    CHECK(sn_str(sn_one()) == "1");
    CHECK(sn_parse("1") == sn_one());
    auto t = sn_make({{3, 2}, {5, 1}}, {2});
    CHECK(sn_str(t) == "2^inf * 3^2 * 5");
    CHECK(sn_parse("2^inf * 3^2 * 5") == t);
    CHECK(sn_parse("  5 *3^2* 2^inf ") == t);
    CHECK(sn_parse("3 * 3") == sn_from_u64(9));
    CHECK_THROWS_AS(sn_parse(""), SchemaError);
    CHECK_THROWS_AS(sn_parse("6"), SchemaError);
    CHECK_THROWS_AS(sn_parse("2^"), SchemaError);
    CHECK_THROWS_AS(sn_parse("2^0"), SchemaError);
    CHECK_THROWS_AS(sn_parse("2 ** 3"), SchemaError);
}

TEST_CASE("multiplication and divisibility match integer arithmetic") {
    // Oracle: on finite values these operations are plain integer ones.
    std::mt19937_64 rng(0x5eed0001);
    std::uniform_int_distribution<std::uint64_t> pick(1, 600);
    for (int trial = 0; trial < 300; ++trial) {
        std::uint64_t x = pick(rng), y = pick(rng);
        auto sx = sn_from_u64(x), sy = sn_from_u64(y);
        CHECK(sn_value(sn_mul(sx, sy)) == Int(x) * y);
        CHECK(sn_divides(sx, sy) == (y % x == 0));
    }

    auto inf2 = sn_make({}, {2});
    CHECK(sn_mul(inf2, sn_from_u64(8)) == inf2);
    CHECK(sn_divides(sn_from_u64(8), inf2));
    CHECK_FALSE(sn_divides(inf2, sn_from_u64(8)));
    CHECK(sn_divides(inf2, sn_mul(inf2, sn_from_u64(3))));
}

TEST_CASE("q-equivalence and ratio witness") {
    auto a = sn_mul(sn_make({}, {2}), sn_from_u64(3));
    auto b = sn_mul(sn_make({}, {2}), sn_from_u64(9));
    CHECK(q_equivalent(a, b));
    CHECK(ratio_witness(a, b) == Rat(1, 3));
    CHECK(ratio_witness(b, a) == Rat(3));

    auto c = sn_make({{3, 1}}, {2, 5});
    CHECK_FALSE(q_equivalent(a, c));
    CHECK_THROWS_AS(ratio_witness(a, c), std::invalid_argument);

    // The witness relates the finite parts exactly: a = w * b.
    std::mt19937_64 rng(0x5eed0002);
    std::uniform_int_distribution<std::uint64_t> pick(1, 5000);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = sn_mul(sn_from_u64(pick(rng)), sn_make({}, {7}));
        auto y = sn_mul(sn_from_u64(pick(rng)), sn_make({}, {7}));
        Rat w = ratio_witness(x, y);
        CHECK(sn_mul(sn_from_u64(static_cast<std::uint64_t>(den(w))), x) ==
              sn_mul(sn_from_u64(static_cast<std::uint64_t>(num(w))), y));
    }
}

TEST_CASE("rational ratio membership") {
    auto a = sn_mul(sn_make({}, {2}), sn_from_u64(3));
    auto b = sn_mul(sn_make({}, {2}), sn_from_u64(9));
    CHECK(rational_ratio_member(Rat(1, 3), a, b));
    CHECK(rational_ratio_member(Rat(2, 3), a, b));   // the 2 is absorbed
    CHECK(rational_ratio_member(Rat(8, 3), a, b));
    CHECK_FALSE(rational_ratio_member(Rat(5, 3), a, b));
    CHECK_FALSE(rational_ratio_member(Rat(1), a, b));
    CHECK_THROWS_AS(rational_ratio_member(Rat(-1, 3), a, b), std::invalid_argument);

    auto c = sn_make({}, {2, 5});
    CHECK_FALSE(rational_ratio_member(Rat(1), a, c));

    // Witness recovery: membership of w*g returns exactly g.
    auto base = sn_make({{3, 2}}, {2, 7});
    auto other = sn_make({{3, 5}, {11, 1}}, {2, 7});
    Rat w = ratio_witness(base, other);
    Rat g = Rat(Int(2) * 2 * 7, 1);
    auto got = ratio_member_witness(w * g, base, other);
    REQUIRE(got.has_value());
    CHECK(*got == g);
    g = Rat(1, Int(7) * 7 * 2);
    got = ratio_member_witness(w * g, base, other);
    REQUIRE(got.has_value());
    CHECK(*got == g);
}

TEST_CASE("terms to supernatural") {
    auto s = sn_from_terms({12}, {10});
    CHECK(s.infinite == std::set<std::uint64_t>{2, 5});
    CHECK(s.finite == std::map<std::uint64_t, std::uint64_t>{{3, 1}});

    CHECK(sn_from_terms({}, {2}) == sn_make({}, {2}));
    CHECK(sn_from_terms({6, 5}, {}) == sn_from_u64(30));
    CHECK_THROWS_AS(sn_from_terms({0}, {2}), std::invalid_argument);
}

TEST_CASE("product divisibility criterion fixtures") {
    TermSeq two{{}, {2}};
    TermSeq four{{}, {4}};
    TermSeq six{{}, {6}};

    CHECK(product_divisibility_criterion(two, four, Rat(1), 8) == Criterion::Holds);
    CHECK(product_divisibility_criterion(two, four, Rat(2), 8) == Criterion::Holds);
    CHECK(product_divisibility_criterion(two, six, Rat(1), 8) == Criterion::Fails);
    CHECK(product_divisibility_criterion(six, two, Rat(1), 8) == Criterion::Fails);

    // 2^inf * 3 versus 2^inf * 9 with explicit prefixes.
    TermSeq s1{{3}, {2}};
    TermSeq s2{{9}, {2}};
    CHECK(product_divisibility_criterion(s1, s2, Rat(1, 3), 8) == Criterion::Holds);
    CHECK(product_divisibility_criterion(s1, s2, Rat(5, 3), 8) == Criterion::Fails);

    CHECK_THROWS_AS(product_divisibility_criterion(s1, s2, Rat(0), 8), std::invalid_argument);
    CHECK_THROWS_AS(product_divisibility_criterion(TermSeq{{0}, {2}}, s2, Rat(1), 8),
                    std::invalid_argument);
}

TEST_CASE("criterion agrees with exponent-map membership") {
    // The bounded scan and the exponent-map decision are independent
    // implementations of the same relation; they must agree whenever the
    // scan is conclusive.
    std::mt19937_64 rng(0x5eed0003);
    std::uniform_int_distribution<int> len(0, 2), plen(1, 3), entry(1, 8), mn(1, 12);
    int conclusive = 0;
    for (int trial = 0; trial < 400; ++trial) {
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
            CHECK(member == (c == Criterion::Holds));
        }
    }
    CHECK(conclusive > 300);
}
