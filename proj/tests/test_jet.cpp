#include <doctest.h>

#include <random>

#include "scl/expression.hpp"
#include "scl/jet.hpp"
#include "oracles.hpp"

using namespace scl;

namespace {

Jet poly_jet(const oracle::Poly& p, const Vec& x, int order) {
    Jet acc = Jet::constant(p.nvars, order, 0.0);
    for (const auto& [e, c] : p.terms) {
        Jet term = Jet::constant(p.nvars, order, c);
        for (int v = 0; v < p.nvars; ++v)
            for (int k = 0; k < e[v]; ++k)
                term = term * Jet::variable(p.nvars, order, x[v], v);
        acc = acc + term;
    }
    return acc;
}

} // namespace

TEST_CASE("variable and constant jets") {
    const Jet x = Jet::variable(1, 2, 3.0, 0);
    const Jet sq = x * x;
    CHECK(sq.value() == 9.0);
    const int a1[] = {1};
    const int a2[] = {2};
    CHECK(sq.coefficient(a1) == 6.0);
    CHECK(sq.coefficient(a2) == 1.0);

    const Jet c = Jet::constant(2, 3, 5.0);
    CHECK(c.value() == 5.0);
    const int order3[] = {1, 2};
    CHECK(c.coefficient(order3) == 0.0);
    const int order1[] = {1, 0};
    CHECK(c.coefficient(order1) == 0.0);
}

TEST_CASE("sin jet coefficients match central finite differences") {
    const Jet s = sin(Jet::variable(1, 3, 0.7, 0));
    auto f = [](double t) { return std::sin(t); };
    for (int m = 0; m <= 3; ++m) {
        double fact = 1.0;
        for (int k = 2; k <= m; ++k) fact *= k;
        const int alpha[] = {m};
        const double got = s.coefficient(alpha) * fact;
        const double want = oracle::fd_derivative_1d(f, 0.7, m);
        CHECK(std::abs(got - want) <= 1e-6 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("product commutes and associates at working precision") {
    std::mt19937_64 rng(7);
    const auto pa = oracle::Poly::random(3, 3, rng);
    const auto pb = oracle::Poly::random(3, 2, rng);
    const auto pc = oracle::Poly::random(3, 2, rng);
    const Vec x{0.3, -0.8, 0.5};
    const Jet a = poly_jet(pa, x, 4), b = poly_jet(pb, x, 4), c = poly_jet(pc, x, 4);

    const Jet ab = a * b, ba = b * a;
    const Jet abc1 = (a * b) * c, abc2 = a * (b * c);
    for (size_t i = 0; i < ab.coefficients().size(); ++i) {
        CHECK(std::abs(ab.coefficients()[i] - ba.coefficients()[i]) <= 1e-14);
        CHECK(std::abs(abc1.coefficients()[i] - abc2.coefficients()[i]) <= 1e-12);
    }
}

TEST_CASE("polynomial reconstruction from jet coefficients") {
    std::mt19937_64 rng(21);
    const int deg = 4, order = 5;
    const auto p = oracle::Poly::random(3, deg, rng);
    const Vec base{0.2, -0.4, 0.9};
    const Vec offset{0.31, 0.17, -0.23};
    const Jet j = poly_jet(p, base, order);

    // reconstruct p(base + offset) = sum coeff(alpha) * offset^alpha
    const auto& layout = JetLayout::get(3, order);
    double acc = 0.0;
    for (int pos = 0; pos < layout.count; ++pos) {
        double term = j.coefficients()[pos];
        for (int v = 0; v < 3; ++v)
            for (int k = 0; k < layout.exponents[pos][v]; ++k) term *= offset[v];
        acc += term;
    }
    Vec shifted(3);
    for (int v = 0; v < 3; ++v) shifted[v] = base[v] + offset[v];
    const double want = p.eval(shifted);
    CHECK(std::abs(acc - want) <= 1e-10 * std::max(1.0, std::abs(want)));
}

TEST_CASE("derivative operation against brute-force polynomial differentiation") {
    std::mt19937_64 rng(42);
    const auto p = oracle::Poly::random(3, 4, rng);
    const Vec x{0.6, -0.2, 0.4};
    const Jet j = poly_jet(p, x, 5);
    for (int var = 0; var < 3; ++var) {
        const Jet dj = j.derivative(var);
        const auto dp = p.derivative(var);
        CHECK(std::abs(dj.value() - dp.eval(x)) <= 1e-12);
        for (int v2 = 0; v2 < 3; ++v2) {
            const Jet ddj = dj.derivative(v2);
            CHECK(std::abs(ddj.value() - dp.derivative(v2).eval(x)) <= 1e-12);
        }
    }
}

TEST_CASE("quotient inverts multiplication and rejects zero denominators") {
    std::mt19937_64 rng(3);
    const auto pa = oracle::Poly::random(2, 2, rng);
    auto pb = oracle::Poly::random(2, 2, rng);
    const Vec x{0.5, 0.25};
    if (std::abs(pb.eval(x)) < 0.1) pb = pb + oracle::Poly::constant(2, 1.0);
    const Jet a = poly_jet(pa, x, 4), b = poly_jet(pb, x, 4);
    const Jet q = (a * b) / b;
    for (size_t i = 0; i < q.coefficients().size(); ++i)
        CHECK(std::abs(q.coefficients()[i] - a.coefficients()[i]) <= 1e-12);

    const Jet zero = Jet::constant(2, 4, 0.0);
    CHECK_THROWS_AS(a / zero, EvalError);
    CHECK_THROWS_AS(ln(zero), EvalError);
}

TEST_CASE("truncation consistency: shared coefficients are identical") {
    // power-series operations are triangular in degree, so lower-order
    // evaluations must agree exactly with truncations of deeper ones
    const Vec x{0.4, -0.7};
    const Expression e = Expression::parse("exp(x1*x2) / (2 + sin(x2))", 2);
    const Jet deep = e.eval_jet(x, 5);
    for (int k = 0; k <= 4; ++k) {
        const Jet shallow = e.eval_jet(x, k);
        const Jet cut = deep.truncated(k);
        for (size_t i = 0; i < shallow.coefficients().size(); ++i)
            CHECK(shallow.coefficients()[i] == cut.coefficients()[i]);
    }
}

TEST_CASE("extend and restrict round-trip") {
    const Expression e = Expression::parse("x1^2*x2 + 3*x2", 2);
    const Vec x{1.5, -0.5};
    const Jet j = e.eval_jet(x, 3);
    const std::vector<int> map{0, 2}; // embed into 4 variables at slots 0, 2
    const Jet big = j.extended(4, map);
    CHECK(big.nvars() == 4);
    CHECK(big.value() == j.value());
    const int alpha[] = {2, 0, 1, 0};
    const int small_alpha[] = {2, 1};
    CHECK(big.coefficient(alpha) == j.coefficient(small_alpha));
    const Jet back = big.restricted(2, map);
    for (size_t i = 0; i < j.coefficients().size(); ++i)
        CHECK(back.coefficients()[i] == j.coefficients()[i]);
}

TEST_CASE("integer powers by squaring match repeated products") {
    const Jet x = Jet::variable(2, 4, 1.2, 0) + Jet::variable(2, 4, -0.3, 1);
    const Jet p5 = x.pow_nat(5);
    Jet ref = Jet::constant(2, 4, 1.0);
    for (int k = 0; k < 5; ++k) ref = ref * x;
    for (size_t i = 0; i < p5.coefficients().size(); ++i)
        CHECK(std::abs(p5.coefficients()[i] - ref.coefficients()[i]) <= 1e-12);
    CHECK(x.pow_nat(0).value() == 1.0);
}

TEST_CASE("unary functions compose to known identities") {
    const Jet x = Jet::variable(1, 6, 0.37, 0);
    const Jet lhs = sin(x) * sin(x) + cos(x) * cos(x);
    CHECK(std::abs(lhs.value() - 1.0) <= 1e-14);
    for (size_t i = 1; i < lhs.coefficients().size(); ++i)
        CHECK(std::abs(lhs.coefficients()[i]) <= 1e-13);

    const Jet expln = exp(ln(x + 2.0));
    const Jet ref = x + 2.0;
    for (size_t i = 0; i < expln.coefficients().size(); ++i)
        CHECK(std::abs(expln.coefficients()[i] - ref.coefficients()[i]) <= 1e-13);
}
