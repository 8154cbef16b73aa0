#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace irrkatz;

TEST_CASE("Rat normalizes and orders exactly") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK(Rat(1, -2).str() == "-1/2");
    CHECK(Rat::parse("6/8") == Rat(3, 4));
    CHECK(Rat::parse("-7") == Rat(-7));
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(floor(Rat(-1, 2)) == Rat(-1));
    CHECK(floor(Rat(7, 2)) == Rat(3));
    CHECK(Rat(5, 7).inverse() == Rat(7, 5));
    CHECK(Rat(-5, 7).abs() == Rat(5, 7));
    CHECK(Rat(4).is_integer());
    CHECK_FALSE(Rat(4, 3).is_integer());
}

TEST_CASE("Rat rejects malformed text") {
    CHECK_THROWS_AS(Rat::parse("1/0"), InvalidInput);
    CHECK_THROWS_AS(Rat::parse("abc"), InvalidInput);
    CHECK_THROWS_AS(Rat::parse(""), InvalidInput);
    CHECK_THROWS_AS(Rat(0).inverse(), InvalidInput);
}

TEST_CASE("Rat big values stay exact") {
    Rat r(1);
    for (int k = 0; k < 40; ++k) r *= Rat(1000003, 999983);
    for (int k = 0; k < 40; ++k) r *= Rat(999983, 1000003);
    CHECK(r == Rat(1));
}

TEST_CASE("ParamExpr parses, prints and substitutes") {
    ParamExpr e = ParamExpr::parse("c + d - a - b");
    CHECK(e.str() == "-1*a - 1*b + 1*c + 1*d");
    CHECK(ParamExpr::parse("1/2 - c").str() == "1/2 - 1*c");
    CHECK(ParamExpr::parse("3*a + 2*a - 5*a").is_zero());
    CHECK(ParamExpr::parse("0").is_zero());
    auto v = e.substitute({{"a", Rat(1, 7)}, {"b", Rat(2, 11)}, {"c", Rat(3, 5)}, {"d", Rat(1, 13)}});
    REQUIRE(v.is_constant());
    CHECK(v.constant() == Rat(1763, 5005));
    auto partial = e.substitute({{"a", Rat(1)}});
    CHECK(partial.str() == "-1 - 1*b + 1*c + 1*d");
    CHECK(ParamExpr::parse(e.str()) == e);
    CHECK_THROWS_AS(ParamExpr::parse("a*b"), ParseError);
    CHECK_THROWS_AS(ParamExpr::parse("1 +"), ParseError);
}

TEST_CASE("Integer-difference predicates") {
    auto a = ParamExpr::parse("a"), a3 = ParamExpr::parse("a + 3"), b = ParamExpr::parse("b");
    CHECK(diff_in_integers(a, a3));
    CHECK(diff_in_integers(a, a));
    CHECK(diff_in_nonzero_integers(a, a3));
    CHECK_FALSE(diff_in_nonzero_integers(a, a));
    CHECK_FALSE(diff_in_integers(a, b));
    CHECK_FALSE(diff_in_integers(ParamExpr(Rat(1, 2)), ParamExpr(Rat(0))));
    CHECK(is_generically_integer(ParamExpr(Rat(-4))));
    CHECK_FALSE(is_generically_integer(ParamExpr::parse("2*a")));
}

TEST_CASE("Poly arithmetic and division") {
    Poly x = Poly::x();
    Poly p = x * x - Rat(1);
    Poly q = Poly::linear(Rat(1));
    auto [quo, rem] = divmod(p, q);
    CHECK(quo == Poly::linear(Rat(-1)));
    CHECK(rem.is_zero());
    CHECK(gcd(p, x * x - Rat(2) * x + Rat(1)) == q);
    CHECK(p.taylor_shift(Rat(1)) == x * x + Rat(2) * x);
    CHECK(Poly::falling_factorial(3)(Rat(5)) == Rat(60));
    CHECK(p.str() == "x^2 - 1");
    CHECK(power(q, 3).multiplicity_at(Rat(1)) == 3);
    CHECK(squarefree_part(power(q, 3) * x) == q * x);
}

TEST_CASE("Rational roots recover random rational factorizations") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::map<Rat, int> want;
        Poly p(std::vector<Rat>{testing::random_rat(rng)});
        if (p.is_zero()) p = Poly(std::vector<Rat>{Rat(3)});
        std::uniform_int_distribution<int> count(1, 4), mult(1, 3);
        int k = count(rng);
        for (int j = 0; j < k; ++j) {
            Rat r = testing::random_rat(rng, 20, 9);
            int m = mult(rng);
            want[r] += m;
            p = p * power(Poly::linear(r), m);
        }
        // an irreducible quadratic factor contributes nothing
        if (trial % 3 == 0) p = p * (Poly::x() * Poly::x() + Rat(2));
        auto got = rational_roots(p);
        std::map<Rat, int> have(got.begin(), got.end());
        CHECK(have == want);
        CHECK(splits_over_q(p) == (trial % 3 != 0));
    }
}

TEST_CASE("RatFunc canonical form, valuations and Laurent coefficients") {
    RatFunc x = RatFunc::x();
    RatFunc f = (x * x - RatFunc(1)) / (x - RatFunc(1));
    CHECK(f == x + RatFunc(1));
    CHECK(f.is_polynomial());
    RatFunc g = RatFunc(1) / (x * x * (x - RatFunc(2)));
    CHECK(g.valuation(Rat(0)) == -2);
    CHECK(g.valuation(Rat(2)) == -1);
    CHECK(g.valuation(Location::infinity()) == 3);
    CHECK(g.translate(Rat(2)).valuation(Rat(0)) == -1);
    // 1/(x^2 (x-2)) = -1/2 x^{-2} - 1/4 x^{-1} - 1/8 - ...
    CHECK(g.laurent_coeff(-2) == Rat(-1, 2));
    CHECK(g.laurent_coeff(-1) == Rat(-1, 4));
    CHECK(g.laurent_coeff(0) == Rat(-1, 8));
    CHECK(RatFunc::power_at(Rat(3), -2) * RatFunc::power_at(Rat(3), 2) == RatFunc(1));
    CHECK(x.reciprocal_argument() == RatFunc(1) / x);
}
