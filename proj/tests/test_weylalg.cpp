#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace irrkatz;
using testing::random_operator;

namespace {

DiffOperator op(const std::string& s) { return parse_operator(s); }

/* x^{-s} P ∈ W[x] via the vanishing pattern of the theta expansion at 0 */
bool triangular_pattern(const ThetaExpansion& T, int s) {
    int r = T.lowest();
    if (r >= s) return true;
    int m = s - r;
    for (int k = 0; k < m; ++k)
        for (int j = 0; j + k < m; ++j)
            if (!T.at(r + k)(Rat(j)).is_zero()) return false;
    return true;
}

/* the corpus formal data at ∞: Σ over factors of order·rank, and of (order−1)·rank for order > 1 */
std::pair<int, int> infinity_factor_sums(const FormalData& F) {
    int all = 0, steep = 0;
    for (const auto& f : F.points.front().factors) {
        int k = f.w.order(), r = f.spectral.rank();
        all += k * r;
        if (k > 1) steep += (k - 1) * r;
    }
    return {all, steep};
}

} // namespace

TEST_CASE("Weyl algebra normal form") {
    DiffOperator x = DiffOperator::x(), D = DiffOperator::D();
    CHECK(D * x - x * D == DiffOperator(1));
    CHECK((D * x).str() == "(1) + (x)*D");
    CHECK(op("D*x") == op("x*D + 1"));
    CHECK(op("(x*D)^2") == op("x^2*D^2 + x*D"));
    CHECK(op("D/x") == op("D*(1/x)"));
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        auto P = random_operator(rng, 2, 2), Q = random_operator(rng, 1, 2), R = random_operator(rng, 2, 1);
        CHECK((P * Q) * R == P * (Q * R));
        CHECK(parse_operator(P.str()) == P);
    }
}

TEST_CASE("Operator parser errors carry positions") {
    CHECK_THROWS_AS(op("x*D +"), ParseError);
    CHECK_THROWS_AS(op("x D"), ParseError);
    CHECK_THROWS_AS(op("x/D"), ParseError);
    CHECK_THROWS_AS(op("x^-1"), ParseError);
    CHECK_THROWS_AS(op("1/(x-x)"), ParseError);
    try {
        op("x + y");
        FAIL("unknown symbol accepted");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
    CHECK(parse_operator("a*x*D", {{"a", Rat(2)}}) == op("2*x*D"));
}

TEST_CASE("prim clears denominators and content") {
    CHECK(prim(op("2*x*D - 2")) == op("x*D - 1"));
    CHECK(prim(op("x^2*D - x")) == op("x*D - 1"));
    CHECK(prim(op("(1/x)*(x*D - 5)")) == op("x*D - 5"));
    CHECK(prim(op("D - 1/(2*x)")) == op("x*D - 1/2"));
}

TEST_CASE("Weights and homogeneous parts") {
    CHECK(weight(op("x*D - 5"), Location(0)) == 0);
    CHECK(weight(op("D^2 + (-x^2-7)*D + (-2*x+3)"), Location::infinity()) == -1);
    CHECK(weight(op("x^2*D^2 + x*D"), Location(0)) == 0);
    CHECK(homogeneous_part(op("x*D + 1"), Location(0), 0) == op("x*D + 1"));
    CHECK(homogeneous_part(op("x*D + x^2"), Location(0), 2) == op("x^2"));
    CHECK(homogeneous_part(op("x^2*D + D"), Location(0), -1) == op("D"));
}

TEST_CASE("Characteristic polynomials") {
    Poly t = Poly::x();
    CHECK(char_poly(op("x*D - 5"), Location(0)) == t - Rat(5));
    CHECK(char_poly(op("x^2*D^2 + 3*x*D + 1"), Location(0)) == t * (t - Rat(1)) + Rat(3) * t + Rat(1));
    const auto& heun = testing::corpus_case("Heun");
    Rat c = heun.entry->defaults.at("c");
    Poly C = char_poly(heun.op, Location(0));
    CHECK(C.monic() == t * (t - (Rat(1) - c)));
    CHECK(is_regular_singular(heun.op, Location(0)));
    CHECK(is_regular_singular(heun.op, Location::infinity()));
    CHECK_FALSE(is_regular_singular(testing::corpus_case("cHeun").op, Location::infinity()));
    CHECK(is_regular_singular(op("x*D - 5"), Location(0)));
}

TEST_CASE("Characteristic polynomial degree reaches the rank exactly at regular singular points") {
    for (const auto& cc : testing::corpus_cases()) {
        for (const auto& sp : cc.formal.points) {
            int deg = char_poly(cc.op, sp.location).degree();
            CHECK(deg <= cc.op.rank());
            bool regular = sp.factors.size() == 1 && sp.factors[0].w.is_zero();
            CHECK((deg == cc.op.rank()) == regular);
        }
    }
}

TEST_CASE("Newton polygons of the confluent family") {
    auto slopes = [](const std::string& name, const Location& at) {
        return newton_polygon(testing::corpus_case(name).op, at).factor_slopes();
    };
    CHECK(slopes("tHeun", Location::infinity()) == std::vector<Rat>{Rat(0), Rat(3)});
    CHECK(slopes("cHeun", Location::infinity()) == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(slopes("bHeun", Location::infinity()) == std::vector<Rat>{Rat(0), Rat(2)});
    CHECK(slopes("dHeun", Location(0)) == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(newton_polygon(testing::corpus_case("Heun").op, Location(0)).slopes.empty());
}

TEST_CASE("Newton polygon degree formula and infinity weight on the corpus") {
    for (const auto& cc : testing::corpus_cases()) {
        CAPTURE(cc.entry->name);
        DiffOperator P = prim(cc.op);
        int n = P.rank();
        int deg_an = P.coeff(n).num().degree();
        NewtonPolygon np = newton_polygon(P, Location::infinity());
        // deg P = i_a − j_a, a the first vertex followed by a slope > 1
        std::size_t a = 0;
        while (a < np.slopes.size() && np.slopes[a] <= Rat(1)) ++a;
        CHECK(deg_of(P) == np.vertices[a].first - np.vertices[a].second);
        auto [all, steep] = infinity_factor_sums(cc.formal);
        CHECK(deg_of(P) == deg_an + steep);
        CHECK(weight(P, Location::infinity()) == n - deg_an - all);
        CHECK(np.vertices.back() == std::make_pair(n, n - deg_an));
    }
}

TEST_CASE("The literal weight formula drops slope-one edges") {
    // wt_∞ = n − deg a_n − Σ_{slopes > 1} λ r misses the w = t x factor of confluent Heun
    const auto& cc = testing::corpus_case("cHeun");
    DiffOperator P = prim(cc.op);
    int n = P.rank(), deg_an = P.coeff(n).num().degree();
    int literal = n - deg_an;
    for (const auto& f : cc.formal.points.front().factors)
        if (f.w.order() > 1) literal -= f.w.order() * f.spectral.rank();
    CHECK(weight(P, Location::infinity()) == -1);
    CHECK(literal == 0);
}

TEST_CASE("Theta expansions reconstruct the operator") {
    CHECK(theta_expand(op("x*D - 5"), Location(0)).terms == std::map<int, Poly>{{0, Poly::x() - Rat(5)}});
    CHECK(theta_expand(op("D"), Location(0)).terms == std::map<int, Poly>{{-1, Poly::x()}});
    CHECK(theta_expand(op("x^2*D"), Location(0)).terms == std::map<int, Poly>{{1, Poly::x()}});
    std::mt19937_64 rng(5);
    for (int k = 0; k < 25; ++k) {
        DiffOperator P = random_operator(rng, 3, 3);
        ThetaExpansion T = theta_expand(P, Location(0));
        CHECK(theta_reconstruct(T) == P);
        CHECK(T.at(T.lowest()) == char_poly(P, Location(0)));
    }
}

TEST_CASE("Addition shifts the characteristic polynomial") {
    CHECK(ad_power(op("x*D - 5"), Rat(0), Rat(2)) == op("x*D - 7"));
    CHECK(prim(ad_power(op("D"), Rat(0), Rat(1))) == op("x*D - 1"));
    CHECK_THROWS_AS(ad_power(op("D"), Rat(0), ParamExpr::parse("a")), InvalidInput);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        DiffOperator P = random_operator(rng, 2, 3);
        Rat c = testing::random_rat(rng, 3, 2), lam = testing::random_rat(rng);
        DiffOperator Q = ad_power(P, c, lam);
        CHECK(Q.rank() == P.rank());
        CHECK(weight(Q, Location(c)) == weight(P, Location(c)));
        CHECK(char_poly(Q, Location(c)) == char_poly(P, Location(c)).taylor_shift(-lam));
    }
}

TEST_CASE("Exponential twists") {
    ExponentialFactor seven(Location::infinity(), {{1, Rat(7)}});
    CHECK(ad_exp(op("D"), seven) == op("D - 7"));
    ExponentialFactor pole(Location(0), {{1, Rat(-3)}});
    CHECK(ad_exp(op("D"), pole) == op("D + 3/x^2"));
    std::mt19937_64 rng(9);
    for (int k = 0; k < 20; ++k) {
        DiffOperator P = random_operator(rng, 2, 2);
        ExponentialFactor w(k % 2 ? Location::infinity() : Location(testing::random_rat(rng, 2, 1)),
                            {{1, testing::random_rat(rng)}, {2, testing::random_rat(rng)}});
        CHECK(ad_exp(ad_exp(P, w), -w) == P);
    }
}

TEST_CASE("Laplace transforms") {
    CHECK(laplace(op("D + x")) == op("x - D"));
    CHECK(laplace(op("x*D")) == op("-x*D - 1"));
    std::mt19937_64 rng(13);
    for (int k = 0; k < 100; ++k) {
        DiffOperator P = random_operator(rng, 2, 2);
        CHECK(laplace_inv(laplace(P)) == P);
        CHECK(laplace(laplace_inv(P)) == P);
    }
    CHECK_THROWS_AS(laplace(op("D + 1/x")), InvalidInput);
}

TEST_CASE("Euler transform of Gauss is rank one and matches the rank formula") {
    const auto& g = testing::corpus_case("Gauss");
    Rat a = g.entry->defaults.at("a");
    DiffOperator E = euler(g.op, Rat(1) - a);
    CHECK(E.rank() == 1);
    // d = deg Prim(P) − Σ m^0_j − m^0_1 = 2 − 2 − 1
    CHECK(E.rank() == g.op.rank() + (deg_of(prim(g.op)) - 2 - 1));
}

TEST_CASE("deg of operators") {
    CHECK(deg_of(op("x*D - 5")) == 1);
    CHECK(deg_of(prim(testing::corpus_case("Heun").op)) == 3);
    CHECK_THROWS_AS(deg_of(op("D + 1/x")), InvalidInput);
}

TEST_CASE("Dividing by a power of x follows the theta vanishing pattern") {
    std::mt19937_64 rng(17);
    int yes = 0, no = 0;
    for (int k = 0; k < 60; ++k) {
        int s = 1 + k % 3;
        DiffOperator Q = random_operator(rng, 2, 3);
        DiffOperator P = DiffOperator(RatFunc::power_at(Rat(0), s)) * Q;
        if (k % 2) {
            // breaks divisibility at order x^{s-1}
            P += DiffOperator(RatFunc::power_at(Rat(0), s - 1)) * DiffOperator(1 + k % 4);
        }
        bool direct = (DiffOperator(RatFunc::power_at(Rat(0), -s)) * P).has_polynomial_coefficients();
        CHECK(direct == triangular_pattern(theta_expand(P, Location(0)), s));
        (direct ? yes : no)++;
    }
    // pure derivatives: x^{-s} D^m is never polynomial, and the pattern stops at m
    for (int m = 1; m <= 3; ++m)
        for (int s = 1; s <= 3; ++s) CHECK_FALSE(triangular_pattern(theta_expand(power(DiffOperator::D(), m), Location(0)), s));
    // θ(θ−1) = x^2 D^2 is divisible by x^2 but not x^3
    CHECK(triangular_pattern(theta_expand(op("x^2*D^2"), Location(0)), 2));
    CHECK_FALSE(triangular_pattern(theta_expand(op("x^2*D^2"), Location(0)), 3));
    CHECK(yes > 0);
    CHECK(no > 0);
}

TEST_CASE("Addition at a point changes deg by m0 − m1") {
    DiffOperator P1 = prim(op("D - (1/7)/x - (2/11)/(x-1) - (3/13)/(x+1) - (5/17)/(x-2) - (1/19)/(x-3)"));
    DiffOperator P = euler(P1, Rat(1, 3));
    FormalData F = extract_formal_data(P);
    int checked = 0;
    for (std::size_t i = 1; i < F.points.size(); ++i) {
        const auto& sp = F.points[i];
        for (const auto& f : sp.factors) {
            if (!f.w.is_zero()) continue;
            int m0 = -1;
            for (const auto& ch : f.spectral.chains)
                if (ch.exponent.is_zero()) m0 = ch.multiplicity;
            if (m0 < 0) continue;
            for (const auto& ch : f.spectral.chains) {
                if (ch.exponent.is_zero()) continue;
                DiffOperator Q = prim(ad_power(P, sp.location.value(), -ch.exponent.constant()));
                CHECK(deg_of(Q) - deg_of(P) == m0 - ch.multiplicity);
                // and back: Q has (0; m1), (−λ1; m0)
                DiffOperator R = prim(ad_power(Q, sp.location.value(), ch.exponent.constant()));
                CHECK(deg_of(R) - deg_of(Q) == ch.multiplicity - m0);
                ++checked;
            }
        }
    }
    CHECK(checked == 5);
}

TEST_CASE("Singular points") {
    auto pts = singular_points(testing::corpus_case("Heun").op);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].is_infinity());
    CHECK(pts[1] == Location(0));
    CHECK(pts[2] == Location(1));
    CHECK(pts[3] == Location(3));
    CHECK_THROWS_AS(singular_points(op("(x^2 - 2)*D + 1")), IrrationalSingularPoint);
}
