#include <doctest.h>

#include <cmath>

#include "scl/fixtures.hpp"
#include "scl/reduction.hpp"
#include "oracles.hpp"

using namespace scl;

namespace {

struct Setup {
    InducedSpace space;
    ConnectionField ccp;
    SigmaLevel level;
};

Setup make(const ExactSymplecticSpec& spec) {
    InducedSpace space = build_quadruple(spec);
    ConnectionField ccp = induced_connection(space, ricci_flat_params(spec));
    SigmaLevel level = locate_sigma(space);
    return {std::move(space), std::move(ccp), level};
}

Vec at_level(const Setup& s, const Vec& x, double t = 0.0) {
    Vec y(s.space.pdim(), 0.0);
    for (int i = 0; i < 4; ++i) y[i] = x[i];
    y[s.space.t_index()] = t;
    y[s.space.s_index()] = s.level.s0;
    return y;
}

} // namespace

TEST_CASE("constraint level is solved, not assumed") {
    const auto s = make(flat4());
    // frozen closed form: -ln(2)/2
    CHECK(s.level.s0 == doctest::Approx(-0.34657359027997264).epsilon(1e-13));
    CHECK(s.level.pairing_defect <= 1e-12);
    CHECK(s.level.closed_form_defect <= 1e-12);

    // pairing off the level: mu(S,E) at s0 + 0.1 is e^{0.2}
    Vec p = at_level(s, {0.1, 0.2, 0.3, 0.4});
    p[s.space.s_index()] += 0.1;
    const Mat mu = mu_at(s.space, p);
    CHECK(mu(s.space.s_index(), s.space.t_index()) ==
          doctest::Approx(1.2214027581601699).epsilon(1e-14));
}

TEST_CASE("reduced form halves the base form") {
    const auto s = make(flat4());
    const Vec x{0.4, -0.3, 0.8, 0.6};
    Vec e1(4, 0.0), e3(4, 0.0);
    e1[0] = 1.0;
    e3[2] = 1.0;
    const Mat om = s.space.base.omega.values(x);
    // omega_13 = -1, so the reduced value is -1/2
    CHECK(reduced_form(s.level, s.space, x, e1, e3) == doctest::Approx(0.5 * om(0, 2)));
    CHECK(reduced_form(s.level, s.space, x, e1, e3) == doctest::Approx(-0.5));

    // antisymmetry is exact
    CHECK(reduced_form(s.level, s.space, x, e1, e1) == 0.0);

    // independence of the fiber coordinate
    for (double t : {-0.8, -0.1, 0.0, 0.4, 1.2})
        CHECK(std::abs(reduced_form(s.level, s.space, x, e1, e3, t) + 0.5) <= 1e-12);
}

TEST_CASE("reduced form field is closed and nondegenerate") {
    const auto s = make(quartic4());
    const TwoFormField red = reduced_form_field(s.level, s.space);
    const auto samples = sample_points(4, 8, 51);
    CHECK(check_symplectic(red, samples, 1e-10, 1e-3).pass);
    // and matches omega/2 entrywise
    for (const auto& x : samples) {
        const Mat rv = red.values(x);
        const Mat om = s.space.base.omega.values(x);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(std::abs(rv(i, j) - 0.5 * om(i, j)) <= 1e-12);
    }
}

TEST_CASE("sigma connection projects tangentially") {
    const auto s = make(quartic4());
    const Vec y = at_level(s, {0.3, -0.6, 0.2, 0.7}, 0.5);

    // nabla^Sigma_E E stays tangent to the level (no d_s component)
    const VectorField e_field = s.space.frame_field(4);
    const Vec nee = sigma_connection(s.level, s.space, s.ccp, e_field, e_field, y);
    CHECK(std::abs(nee[s.space.s_index()]) <= 1e-12);

    // horizontal pair on the flat fixture: nabla^Sigma_{Xbar_1} Xbar_3 =
    // -omega_13 E / 2 = E/2
    const auto flat = make(flat4());
    const Vec yf = at_level(flat, {0.5, 0.1, -0.4, 0.9}, 0.2);
    const Vec v = sigma_connection(flat.level, flat.space, flat.ccp, flat.space.frame_field(0),
                                   flat.space.frame_field(2), yf);
    const Mat binv = flat.space.frame_inverse(yf);
    Vec frame_comps(6, 0.0);
    for (int a = 0; a < 6; ++a)
        for (int m = 0; m < 6; ++m) frame_comps[a] += binv(a, m) * v[m];
    CHECK(frame_comps[4] == doctest::Approx(0.5).epsilon(1e-12));
    for (int a = 0; a < 6; ++a)
        if (a != 4) CHECK(std::abs(frame_comps[a]) <= 1e-12);

    // rejects fields not tangent to the level and points off the level
    CHECK_THROWS_AS(
        sigma_connection(s.level, s.space, s.ccp, s.space.frame_field(5), e_field, y), EvalError);
    Vec off = y;
    off[s.space.s_index()] += 0.2;
    CHECK_THROWS_AS(sigma_connection(s.level, s.space, s.ccp, e_field, e_field, off), EvalError);
}

TEST_CASE("E is affine for the sigma connection") {
    const auto s = make(quartic4());
    for (const auto& x : sample_points(4, 5, 57)) {
        const Vec y = at_level(s, x, 0.3);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const auto jets = sigma_connection_jets(
                    s.level, s.space, s.ccp, s.space.frame_field(i), s.space.frame_field(j), y, 1);
                for (const auto& comp : jets)
                    CHECK(std::abs(comp.derivative(s.space.t_index()).value()) <= 1e-10);
            }
    }
}

TEST_CASE("reduction recovers the input connection") {
    for (const char* name : {"flat4", "quartic4"}) {
        const auto s = make(fixture_by_name(name));
        for (const auto& x : sample_points(4, 10, 63)) {
            const auto gamma_in = s.space.base.connection.christoffels(x);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const Vec red = reduced_connection(s.level, s.space, s.ccp, x, i, j);
                    for (int k = 0; k < 4; ++k)
                        CHECK(std::abs(red[k] - gamma_in(k, i, j)) <= 1e-9);
                    // E and S defects vanish: the result is horizontal
                    CHECK(std::abs(red[4]) <= 1e-10);
                    CHECK(std::abs(red[5]) <= 1e-10);
                }
        }
    }
}

TEST_CASE("reduction is independent of the fiber point") {
    const auto s = make(quartic4());
    const Vec x{0.25, 0.65, -0.35, 0.45};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Vec a = reduced_connection(s.level, s.space, s.ccp, x, i, j, 0.0);
            const Vec b = reduced_connection(s.level, s.space, s.ccp, x, i, j, 0.9);
            for (int k = 0; k < 6; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-11);
        }
}

TEST_CASE("round-trip report") {
    for (const char* name : {"flat4", "quartic4"}) {
        const auto report = roundtrip_report(fixture_by_name(name), 8, 1729);
        CHECK(report.overall());
        CHECK(report.scale_ledger.at("s0") == doctest::Approx(-0.34657359027997264));
        CHECK(report.scale_ledger.at("reduced_form_factor") == doctest::Approx(0.5));
    }
}

TEST_CASE("disabling the scale ledger exposes the factor of two") {
    const auto report = roundtrip_report(flat4(), 6, 1729, {}, false);
    bool found = false;
    for (const auto& rec : report.records)
        if (rec.identity == "reduced form equals omega") {
            found = true;
            CHECK(!rec.pass);
            CHECK(rec.residual == doctest::Approx(0.5)); // half of max |omega| = 1
        }
    CHECK(found);
    CHECK(!report.overall());
}

TEST_CASE("reduced connection field refuses jet orders above zero") {
    const auto s = make(flat4());
    const ConnectionField red = reduced_connection_field(s.level, s.space, s.ccp);
    CHECK_NOTHROW(red.christoffels(Vec{0.1, 0.2, 0.3, 0.4}));
    CHECK_THROWS_AS(red.christoffel_jets(Vec{0.1, 0.2, 0.3, 0.4}, 1), EvalError);
}
