#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "scl/expression.hpp"
#include "oracles.hpp"

using namespace scl;

TEST_CASE("parsing and scalar evaluation") {
    const Vec p{2.0, 5.0, 0.0, 0.0};
    CHECK(Expression::parse("x1*x2 + 3", 4).eval(p) == 13.0);
    CHECK(Expression::parse("x1^0", 4).eval(Vec{7.0, 0, 0, 0}) == 1.0);
    CHECK(Expression::parse("x1^2 / (1 + x3^2)", 4).eval(Vec{3.0, 0.0, 1.0, 0.0}) ==
          doctest::Approx(4.5));
    CHECK(Expression::parse("  x1 \t* (x2+ 1)", 4).eval(p) == 12.0); // whitespace insignificant
    CHECK(Expression::parse("2*x1^3", 4).eval(p) == 16.0);
    CHECK(Expression::parse("-x1^2", 4).eval(p) == -4.0); // unary minus binds outside '^'
    CHECK(Expression::parse("1e-2 + x1", 4).eval(p) == doctest::Approx(2.01));
}

TEST_CASE("parse errors carry positions and reasons") {
    CHECK_THROWS_AS(Expression::parse("x9", 4), ParseError);
    CHECK_THROWS_AS(Expression::parse("x0", 4), ParseError);
    CHECK_THROWS_AS(Expression::parse("tan(x1)", 4), ParseError);
    CHECK_THROWS_AS(Expression::parse("x1 +", 4), ParseError);
    CHECK_THROWS_AS(Expression::parse("(x1", 4), ParseError);
    CHECK_THROWS_AS(Expression::parse("x1 ^ x2", 4), ParseError); // exponents are naturals
    CHECK_THROWS_AS(Expression::parse("x1 5", 4), ParseError);
    try {
        Expression::parse("x1 + tan(x2)", 4);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
}

TEST_CASE("evaluation domain errors") {
    CHECK_THROWS_AS(Expression::parse("1/x1", 4).eval(Vec{0.0, 0, 0, 0}), EvalError);
    CHECK_THROWS_AS(Expression::parse("ln(x1)", 4).eval(Vec{-1.0, 0, 0, 0}), EvalError);
    CHECK_THROWS_AS(Expression::parse("ln(x1)", 4).eval(Vec{0.0, 0, 0, 0}), EvalError);
}

TEST_CASE("unary functions agree with the standard library") {
    const Expression e = Expression::parse("exp(x1) + sin(x2)*cos(x1) + ln(x2 + 2)", 2);
    const Vec p{0.3, 0.8};
    const double want = std::exp(0.3) + std::sin(0.8) * std::cos(0.3) + std::log(2.8);
    CHECK(e.eval(p) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("jet evaluation of x1^2 at 3") {
    const Jet j = Expression::parse("x1^2", 1).eval_jet(Vec{3.0}, 2);
    const int a0[] = {0};
    const int a1[] = {1};
    const int a2[] = {2};
    CHECK(j.coefficient(a0) == 9.0);
    CHECK(j.coefficient(a1) == 6.0);
    CHECK(j.coefficient(a2) == 1.0);
}

TEST_CASE("constant jets have vanishing higher coefficients") {
    const Jet j = Expression::constant(5.0, 3).eval_jet(Vec{1.0, 2.0, 3.0}, 3);
    CHECK(j.value() == 5.0);
    for (size_t i = 1; i < j.coefficients().size(); ++i) CHECK(j.coefficients()[i] == 0.0);
}

TEST_CASE("sin jet against finite differences") {
    const Jet j = Expression::parse("sin(x1)", 1).eval_jet(Vec{0.7}, 3);
    auto f = [](double t) { return std::sin(t); };
    for (int m = 0; m <= 3; ++m) {
        const int alpha[] = {m};
        const double want = oracle::fd_derivative_1d(f, 0.7, m);
        CHECK(std::abs(j.partial(alpha) - want) <= 1e-6 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("partial derivatives") {
    const Expression e = Expression::parse("x1*x2", 4);
    const int alpha[] = {1, 1, 0, 0};
    for (double off : {0.0, 0.7, -1.3})
        CHECK(e.partial(Vec{off, 2 * off, 1.0, -1.0}, alpha) == 1.0);

    const int a2[] = {2};
    CHECK(Expression::parse("x1^3", 1).partial(Vec{2.0}, a2) == 12.0);
}

TEST_CASE("partials of a random quartic against brute-force expansion") {
    std::mt19937_64 rng(99);
    const auto p = oracle::Poly::random(3, 4, rng);
    // rebuild the same polynomial as a parsed-expression tree
    Expression e = Expression::constant(0.0, 3);
    for (const auto& [exps, coef] : p.terms) {
        Expression term = Expression::constant(coef, 3);
        for (int v = 0; v < 3; ++v)
            if (exps[v] > 0) term = term * Expression::variable(v, 3).pow(exps[v]);
        e = e + term;
    }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::vector<std::vector<int>> alphas{{1, 0, 0}, {2, 1, 0}, {0, 3, 1}, {1, 1, 1},
                                               {4, 0, 0}};
    for (int trial = 0; trial < 5; ++trial) {
        const Vec x{u(rng), u(rng), u(rng)};
        for (const auto& alpha : alphas) {
            const double want = p.partial(x, alpha);
            CHECK(std::abs(e.partial(x, alpha) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("Leibniz rule is definitional for product nodes") {
    const Expression a = Expression::parse("x1^2 + sin(x2)", 2);
    const Expression b = Expression::parse("exp(x1) * x2", 2);
    const Expression prod = a * b;
    const Vec x{0.4, 1.1};
    const Jet lhs = prod.eval_jet(x, 4);
    const Jet rhs = a.eval_jet(x, 4) * b.eval_jet(x, 4);
    for (size_t i = 0; i < lhs.coefficients().size(); ++i)
        CHECK(lhs.coefficients()[i] == rhs.coefficients()[i]);
}

TEST_CASE("chain rule for exp at first order") {
    const Expression inner = Expression::parse("x1^2*x2 + x2", 2);
    const Expression outer = exp(inner);
    const Vec x{0.8, -0.6};
    for (int var = 0; var < 2; ++var) {
        std::vector<int> alpha(2, 0);
        alpha[var] = 1;
        const double lhs = outer.partial(x, alpha);
        const double rhs = std::exp(inner.eval(x)) * inner.partial(x, alpha);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("jet order cap is enforced") {
    const Expression e = Expression::parse("x1^2", 1);
    CHECK_THROWS_AS(e.eval_jet(Vec{1.0}, jet_order_cap() + 1), EvalError);
    CHECK_NOTHROW(e.eval_jet(Vec{1.0}, jet_order_cap()));
    CHECK_THROWS_AS(set_jet_order_cap(0), EvalError);
}

TEST_CASE("concurrent evaluation of a shared expression") {
    const Expression e = Expression::parse("exp(x1*x2) + x1^3/(2+x2)", 2);
    const Vec x{0.3, 0.6};
    const double want = e.eval(x);
    std::vector<std::thread> threads;
    std::vector<double> results(8, 0.0);
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&, t] {
            double acc = 0.0;
            for (int k = 0; k < 200; ++k) acc = e.eval_jet(x, 3).value();
            results[t] = acc;
        });
    for (auto& th : threads) th.join();
    for (double r : results) CHECK(r == want);
}
