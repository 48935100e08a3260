#include "doctest.h"

#include "brickwork/bipoly.hpp"
#include "brickwork/poly.hpp"
#include "brickwork/ratfun.hpp"
#include "brickwork/roots.hpp"
#include "brickwork/scalar_io.hpp"
#include "brickwork/scalars.hpp"
#include "test_util.hpp"

using namespace brickwork;

namespace {
const FieldSpec Q = FieldSpec::rationals();

Poly<Rational> P(const std::string& s) { return parse_poly<Rational>(s, Q); }
RatFun<Rational> R(const std::string& s) { return parse_ratfun<Rational>(s, Q); }
}  // namespace

TEST_CASE("rational arithmetic is canonical") {
    Rational a(2, 4);
    CHECK(a == Rational(1, 2));
    CHECK((a + a).is_one());
    CHECK(Rational(3) / Rational(6) == a);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), zero_denominator_error);
    CHECK(Rational::from_decimal_string("-7/3") == Rational(-7, 3));
}

TEST_CASE("prime field arithmetic with literal unification") {
    PrimeField a(3, 7), b(5, 7);
    CHECK((a + b) == PrimeField(1, 7));
    CHECK((a * b) == PrimeField(1, 7));
    CHECK(a.inv() * a == PrimeField(1, 7));
    PrimeField lit(-1);  // modulus adopted from the other operand
    CHECK((a * lit) == PrimeField(4, 7));
    CHECK_THROWS_AS(PrimeField(1, 5) + PrimeField(1, 7), scalar_mismatch_error);
    CHECK(PrimeField::is_prime(97));
    CHECK_FALSE(PrimeField::is_prime(91));
}

TEST_CASE("polynomial division, gcd, evaluation") {
    auto a = P("x^3 - 1");
    auto b = P("x - 1");
    auto [q, r] = divmod(a, b);
    CHECK(q == P("x^2 + x + 1"));
    CHECK(r.is_zero());
    CHECK(gcd(P("x^2 - 1"), P("x^2 - 2*x + 1")) == P("x - 1"));
    auto [g, s, t] = extended_gcd(P("x^2 - 1"), P("x - 1"));
    CHECK(g == P("x - 1"));
    CHECK(P("x^2-1") * s + P("x-1") * t == g);
    CHECK(P("x^2 + 1")(Rational(2)) == Rational(5));
}

TEST_CASE("ratfun canonical form") {
    SUBCASE("common factor cancels") { CHECK(ratfun_normalize(P("x^2-1"), P("x-1")) == R("x+1")); }
    SUBCASE("zero case") {
        RatFun<Rational> z = ratfun_normalize(P("0"), P("x^3"));
        CHECK(z.is_zero());
        CHECK(z.den().is_one());
    }
    SUBCASE("monic denominator scaling") { CHECK(ratfun_normalize(P("2*x"), P("2")) == R("x")); }
    SUBCASE("zero denominator rejected") {
        CHECK_THROWS_AS(ratfun_normalize(P("x"), P("0")), zero_denominator_error);
    }
}

TEST_CASE("ratfun field axioms in canonical form") {
    bwtest::Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto r = bwtest::rand_ratfun<Rational>(rng);
        auto s = bwtest::rand_ratfun<Rational>(rng);
        if (s.is_zero()) continue;
        CHECK((r * s) / s == r);
        CHECK((r + s) - s == r);
    }
}

TEST_CASE("localized ring membership") {
    LocalizedRing<Rational> gamma(P("x^2 - x"));  // h = x(x-1)
    CHECK(gamma.contains(R("1/x")));
    CHECK(gamma.contains(R("(x+2)/(x^2 - 2*x + 1)")));  // den (x-1)^2
    CHECK_FALSE(gamma.contains(R("1/(x-2)")));
    CHECK(gamma.contains_lambda(Rational(2)));
    CHECK_FALSE(gamma.contains_lambda(Rational(0)));
}

TEST_CASE("partial fraction shift identity") {
    SUBCASE("one division step") {
        auto out = partial_fraction_shift<Rational>(1, 1, Rational(5));
        CHECK(out.head == P("1"));
        CHECK(out.tail.empty());
        CHECK(out.top_coeff == Rational(5));
    }
    SUBCASE("identity case") {
        auto out = partial_fraction_shift<Rational>(0, 3, Rational(2));
        CHECK(out.head.is_zero());
        CHECK(out.tail.empty());
        CHECK(out.top_coeff.is_one());
    }
    SUBCASE("polynomial long division oracle") {
        // x^2/(x-1) = (x+1) + 1/(x-1): long division of x^2 by (x-1)
        auto [q, r] = divmod(P("x^2"), P("x-1"));
        CHECK(q == P("x+1"));
        CHECK(r == P("1"));
        auto out = partial_fraction_shift<Rational>(2, 1, Rational(1));
        CHECK(out.head == q);
        CHECK(out.tail.empty());
        CHECK(out.top_coeff == r.constant_term());
    }
    SUBCASE("exhaustive recombination, r,s <= 6") {
        // recombination is verified inside partial_fraction_shift; this
        // drives the full grid the acceptance suite relies on
        for (unsigned r = 0; r <= 6; ++r)
            for (unsigned s = 1; s <= 6; ++s)
                for (long l : {0L, 1L, -1L, 2L, -2L, 3L})
                    CHECK_NOTHROW(partial_fraction_shift<Rational>(r, s, Rational(l)));
    }
}

TEST_CASE("sample point sequence") {
    auto pts = sample_points<Rational>(P("1"), 5, Q);
    CHECK(pts == std::vector<Rational>{0, 1, -1, 2, -2});
    auto filtered = sample_points<Rational>(P("x^2 - 1"), 4, Q);
    CHECK(filtered == std::vector<Rational>{0, 2, -2, 3});
    auto fp = sample_points<PrimeField>(Poly<PrimeField>(PrimeField(1, 5)), 10, FieldSpec::prime(5));
    CHECK(fp.size() == 5);  // field exhausted
}

TEST_CASE("bivariate polynomials") {
    auto c = parse_bipoly<Rational>("x^2*y - 2*x + 1/2", Q);
    CHECK(c.deg_x() == 2);
    CHECK(c.deg_y() == 1);
    CHECK(c.x_coeff(2) == P("x"));  // a_2(y) = y; Poly is variable-name agnostic
    CHECK(c.eval(Rational(1), Rational(2)) == Rational(1, 2));
    CHECK(c.diagonal() == P("x^3 - 2*x + 1/2"));
    CHECK(c.str() == "1/2 + -2*x + x^2*y");
    CHECK(parse_bipoly<Rational>(c.str(), Q) == c);
}

TEST_CASE("expression parser handles nested fractions") {
    CHECK(R("(x^2-1)/(x-1)") == R("x+1"));
    CHECK(parse_bipoly<Rational>("(x^2*y - y)/(x-1)", Q) == parse_bipoly<Rational>("y*x + y", Q));
    CHECK_THROWS_AS(parse_bipoly<Rational>("1/(x-1)", Q), parse_error);
    CHECK_THROWS_AS(P("x + "), parse_error);
    CHECK(parse_scalar<Rational>("-3/4", Q) == Rational(-3, 4));
    CHECK(parse_poly<PrimeField>("x + 6", FieldSpec::prime(5)) ==
          parse_poly<PrimeField>("x + 1", FieldSpec::prime(5)));
}

TEST_CASE("ground field root extraction") {
    auto split = field_roots(P("x^3 - x"));
    CHECK(split.roots.size() == 3);
    CHECK(split.cofactor.degree() == 0);
    auto partial = field_roots(P("(x^2+1)*(x-1/2)"));
    CHECK(partial.roots == std::vector<Rational>{Rational(1, 2)});
    CHECK(partial.cofactor.monic() == P("x^2+1"));
    auto fp = field_roots(parse_poly<PrimeField>("x^2 + 1", FieldSpec::prime(5)), 5);
    CHECK(fp.roots.size() == 2);  // 2 and 3 square to -1 mod 5
}
