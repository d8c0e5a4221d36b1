#include <gtest/gtest.h>

#include "axkatz/intpoly.hpp"
#include "axkatz_suite/generators.hpp"

namespace {

using namespace axkatz;

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

TEST(FiniteDifference, Squares) {
    EXPECT_EQ(finite_difference(DiffTable(ints({1, 4, 9}))).values(), ints({3, 5}));
}

TEST(FiniteDifference, Constant) {
    EXPECT_EQ(finite_difference(DiffTable(ints({7, 7, 7}))).values(), ints({0, 0}));
}

TEST(FiniteDifference, PeriodicWrapsAround) {
    const auto d = finite_difference(DiffTable(ints({1, 0}), 2));
    EXPECT_EQ(d.values(), ints({-1, 1}));
    EXPECT_EQ(d.period(), std::optional<std::size_t>(2));
    EXPECT_EQ(d.at(-3), 1);
}

TEST(FiniteDifference, ShortTableIsRejected) {
    EXPECT_THROW(finite_difference(DiffTable(ints({5}))), std::invalid_argument);
    EXPECT_THROW(DiffTable(ints({1}), 2), std::invalid_argument);
    EXPECT_THROW(DiffTable(ints({1}), 0), std::invalid_argument);
}

TEST(FiniteDifference, Linearity) {
    gen::Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        const auto len = static_cast<std::size_t>(gen::uniform(rng, 2, 20));
        std::vector<BigInt> a, b, sum;
        for (std::size_t i = 0; i < len; ++i) {
            a.emplace_back(gen::uniform(rng, -1'000'000, 1'000'000));
            b.emplace_back(gen::uniform(rng, -1'000'000, 1'000'000));
            sum.push_back(a.back() + b.back());
        }
        const auto da = finite_difference(DiffTable(a)).values();
        const auto db = finite_difference(DiffTable(b)).values();
        const auto ds = finite_difference(DiffTable(sum)).values();
        for (std::size_t i = 0; i < ds.size(); ++i) ASSERT_EQ(ds[i], da[i] + db[i]);
    }
}

TEST(Newton, Examples) {
    EXPECT_EQ(newton_coeffs(DiffTable(ints({0, 1, 4}))).coeffs(), ints({0, 1, 2}));
    EXPECT_EQ(newton_coeffs(DiffTable(ints({5, 5, 5, 5}))).coeffs(), ints({5}));
    EXPECT_EQ(newton_coeffs(DiffTable(ints({0, 0, 0, 1}))).coeffs(), ints({0, 0, 0, 1}));
    EXPECT_THROW(newton_coeffs(DiffTable({})), std::invalid_argument);
}

TEST(Newton, SquaresExtendBeyondTable) {
    const auto g = newton_coeffs(DiffTable(ints({0, 1, 4})));
    for (long x = -5; x <= 5; ++x) EXPECT_EQ(g(BigInt(x)), x * x);
}

TEST(Newton, ReproducesRandomTables) {
    gen::Rng rng(12);
    for (int iter = 0; iter < 500; ++iter) {
        const auto len = static_cast<std::size_t>(gen::uniform(rng, 1, 20));
        std::vector<BigInt> v;
        for (std::size_t i = 0; i < len; ++i) v.emplace_back(gen::uniform(rng, -1'000'000, 1'000'000));
        const auto g = newton_coeffs(DiffTable(v));
        ASSERT_LE(g.degree(), static_cast<long>(len) - 1);
        for (std::size_t x = 0; x < len; ++x) ASSERT_EQ(g(BigInt(x)), v[x]);
    }
}

TEST(Evaluation, Examples) {
    const IntValuedPoly g(ints({0, 1, 2}));
    EXPECT_EQ(eval_iv(g, BigInt(4)), 16);
    EXPECT_EQ(eval_iv(g, BigInt(-1)), 1);
    const auto one = IntValuedPoly::constant(1);
    for (long x : {-7, 0, 3, 1000}) EXPECT_EQ(eval_iv(one, BigInt(x)), 1);
}

TEST(Evaluation, ZeroPolynomial) {
    const IntValuedPoly z(ints({0, 0, 0}));
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), -1);
    EXPECT_EQ(z(BigInt(9)), 0);
}

TEST(BinomialBasis, Examples) {
    EXPECT_EQ(to_binomial_basis(parse_rational_poly("x^2")).coeffs(), ints({0, 1, 2}));
    EXPECT_EQ(to_binomial_basis(parse_rational_poly("1/2*x^2 + 1/2*x")).coeffs(), ints({0, 1, 1}));
}

TEST(BinomialBasis, HalfXIsNotIntegerValued) {
    try {
        to_binomial_basis(parse_rational_poly("1/2*x"));
        FAIL() << "expected NotIntegerValued";
    } catch (const NotIntegerValued& e) {
        EXPECT_EQ(e.witness, 1);
        EXPECT_EQ(e.value, Rational(1, 2));
    }
}

TEST(BinomialBasis, IdentityOnBasisElements) {
    for (unsigned n = 0; n <= 10; ++n) {
        const auto b = IntValuedPoly::basis(n);
        EXPECT_EQ(to_binomial_basis(to_monomial(b)), b) << n;
    }
}

TEST(BinomialBasis, RoundTripIntegerPolynomials) {
    gen::Rng rng(13);
    for (int iter = 0; iter < 300; ++iter) {
        const auto deg = gen::uniform(rng, 0, 10);
        std::vector<Rational> c;
        for (long k = 0; k <= deg; ++k) c.emplace_back(gen::uniform(rng, -20, 20));
        const RationalPoly f(c);
        const auto g = to_binomial_basis(f);
        for (long x = -15; x <= 15; ++x) ASSERT_EQ(Rational(g(BigInt(x))), f(Rational(x)));
    }
}

TEST(BinomialBasis, IntegerValuedRationalCoefficients) {
    // binom(x, 3) = (x^3 - 3x^2 + 2x) / 6
    EXPECT_EQ(to_binomial_basis(parse_rational_poly("1/6*x^3 - 1/2*x^2 + 1/3*x")), IntValuedPoly::basis(3));
    EXPECT_THROW(to_binomial_basis(parse_rational_poly("1/6*x^3")), NotIntegerValued);
}

TEST(Parser, RoundTripThroughPrinter) {
    for (const char* text : {"1/2*x^2 + 1/2*x", "x", "-3", "x^5 - 2*x^3 + 7/3", "-x^2 - x", "0"}) {
        const auto f = parse_rational_poly(text);
        EXPECT_EQ(to_string(f), text);
        EXPECT_EQ(parse_rational_poly(to_string(f)), f);
    }
}

TEST(Parser, RandomRoundTrip) {
    gen::Rng rng(14);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<Rational> c;
        const auto deg = gen::uniform(rng, 0, 8);
        for (long k = 0; k <= deg; ++k) c.emplace_back(gen::uniform(rng, -9, 9), gen::uniform(rng, 1, 6));
        const RationalPoly f(c);
        const auto text = to_string(f);
        ASSERT_EQ(to_string(parse_rational_poly(text)), text);
        ASSERT_EQ(parse_rational_poly(text), f);
    }
}

TEST(Parser, CollectsLikeTerms) {
    EXPECT_EQ(to_string(parse_rational_poly("x*x + 2*x^2 - x")), "3*x^2 - x");
    EXPECT_EQ(to_string(parse_rational_poly("2*3*x")), "6*x");
}

TEST(Parser, RejectsMalformedText) {
    for (const char* text : {"", "x +", "+ + x", "y", "1/0", "x^", "2 x", "X^2"})
        EXPECT_THROW(parse_rational_poly(text), ParseError) << text;
}

TEST(Parser, MonomialOfBinomialBasis) {
    EXPECT_EQ(to_string(to_monomial(IntValuedPoly::basis(2))), "1/2*x^2 - 1/2*x");
    EXPECT_EQ(to_string(to_monomial(IntValuedPoly(ints({0, 1, 2})))), "x^2");
}

}  // namespace
