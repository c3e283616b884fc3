// Acceptance suite: every top-level claim is exercised at its stated
// tolerance and reported as a single pass/fail line. Exit code is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "scl/config.hpp"
#include "scl/fixtures.hpp"
#include "scl/induction.hpp"
#include "scl/lifts.hpp"
#include "scl/reduction.hpp"
#include "scl/report.hpp"
#include "scl/runner.hpp"
#include "oracles.hpp"

using namespace scl;

namespace {

int g_failures = 0;

void report(int id, const std::string& label, double residual, double tol,
            const std::string& extra = "") {
    const bool pass = residual <= tol;
    if (!pass) ++g_failures;
    std::printf("%s criterion %2d: %-58s residual %.3e  tol %.1e%s%s\n", pass ? "PASS" : "FAIL",
                id, label.c_str(), residual, tol, extra.empty() ? "" : "  ", extra.c_str());
}

void report_bool(int id, const std::string& label, bool pass, const std::string& extra = "") {
    if (!pass) ++g_failures;
    std::printf("%s criterion %2d: %-58s %s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
                extra.c_str());
}

struct Fixture {
    std::string name;
    ExactSymplecticSpec spec;
    InducedSpace space;
    RicciFlatParameters params;
    ConnectionField ccp;
    std::vector<Vec> p_points; // 20 seeded points on P
    std::vector<Vec> m_points; // 20 seeded points on M
};

Fixture make_fixture(const std::string& name, uint64_t seed) {
    Fixture f{name, fixture_by_name(name), {}, {}, {}, {}, {}};
    f.space = build_quadruple(f.spec);
    f.params = ricci_flat_params(f.spec);
    f.ccp = induced_connection(f.space, f.params);
    f.p_points = sample_points(f.space.pdim(), 20, seed, f.space.s_index());
    f.m_points = sample_points(f.spec.chart.dim, 20, seed);
    return f;
}

} // namespace

int main() {
    const uint64_t seed = 1729;
    std::vector<Fixture> fixtures;
    fixtures.push_back(make_fixture("flat4", seed));
    fixtures.push_back(make_fixture("quartic4", seed));

    // 1. Ricci flatness of the induced connection at 20 seeded points.
    for (const auto& f : fixtures) {
        const auto start = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (const auto& p : f.p_points)
            worst = std::max(worst, max_abs_grid(ricci_P(f.ccp, p)));
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char extra[64];
        std::snprintf(extra, sizeof extra, "(%s, %.2f s)", f.name.c_str(), secs);
        report(1, "induced Ricci tensor vanishes (21 components)", worst, 1e-8, extra);
    }

    // 2. Ricci-type base (flat4) gives a flat induced connection.
    {
        const auto& f = fixtures[0];
        double worst = 0.0;
        for (const auto& p : f.p_points)
            worst = std::max(worst, max_abs_grid(curvature_direct(f.ccp, p)));
        report(2, "Ricci-type base induces a flat connection", worst, 1e-9, "(flat4)");
    }

    // 3. Symplectic-connection contract on the induced space.
    for (const auto& f : fixtures) {
        double worst_torsion = 0.0, worst_mu = 0.0;
        const TwoFormField mu = f.space.mu();
        for (const auto& p : f.p_points) {
            worst_torsion = std::max(worst_torsion, max_abs_grid(torsion(f.ccp, p)));
            worst_mu = std::max(worst_mu, max_abs_grid(nabla_two_form(f.ccp, mu, p)));
        }
        report(3, "induced connection torsion-free", worst_torsion, 1e-10, "(" + f.name + ")");
        report(3, "induced connection parallelizes mu", worst_mu, 1e-9, "(" + f.name + ")");
    }

    // 4. Affine and conformal structure fields.
    for (const auto& f : fixtures) {
        const TwoFormField mu = f.space.mu();
        const VectorField e_field = f.space.frame_field(f.space.mdim());
        const VectorField s_field = f.space.frame_field(f.space.mdim() + 1);
        double lie_e = 0.0, lie_s = 0.0, lie_e_mu = 0.0, lie_s_mu = 0.0;
        for (const auto& p : f.p_points) {
            lie_e = std::max(lie_e, max_abs_grid(lie_derivative_connection(e_field, f.ccp, p)));
            lie_s = std::max(lie_s, max_abs_grid(lie_derivative_connection(s_field, f.ccp, p)));
            lie_e_mu = std::max(lie_e_mu, max_abs_grid(lie_derivative_two_form(e_field, mu, p)));
            const Mat ls = lie_derivative_two_form(s_field, mu, p);
            const Mat muv = mu.values(p);
            for (int i = 0; i < f.space.pdim(); ++i)
                for (int j = 0; j < f.space.pdim(); ++j)
                    lie_s_mu = std::max(lie_s_mu, std::abs(ls(i, j) - 2.0 * muv(i, j)));
        }
        report(4, "E and S are affine for the induced connection", std::max(lie_e, lie_s), 1e-9,
               "(" + f.name + ")");
        report(4, "L_E mu = 0 and L_S mu = 2 mu", std::max(lie_e_mu, lie_s_mu), 1e-10,
               "(" + f.name + ")");
    }

    // 5. Closed-form curvature blocks against the direct computation.
    {
        const auto& f = fixtures[1]; // quartic4
        const int E = 4, S = 5;
        double worst_main = 0.0;
        double xee[2] = {0.0, 0.0};
        const auto pts10 = sample_points(f.space.pdim(), 10, seed + 5, f.space.s_index());
        for (const auto& p : pts10) {
            const auto direct = curvature_in_frame(f.space, f.ccp, p);
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b)
                    for (int c = 0; c < 6; ++c) {
                        const bool horizontal = a < 4 && b < 4 && c < 4;
                        const bool zero_block = (a == S || b == S || c == S);
                        if (!horizontal && !zero_block) continue;
                        const Vec formula = curvature_formula(f.space, f.params, p, a, b, c);
                        for (int d = 0; d < 6; ++d)
                            worst_main = std::max(
                                worst_main, std::abs(formula[d] - direct(d, c, a, b)));
                    }
            for (int a = 0; a < 4; ++a)
                for (int reading = 0; reading < 2; ++reading) {
                    const Vec formula = curvature_formula(f.space, f.params, p, a, E, E, reading);
                    for (int d = 0; d < 6; ++d)
                        xee[reading] = std::max(xee[reading],
                                                std::abs(formula[d] - direct(d, E, a, E)));
                }
        }
        report(5, "closed-form horizontal and zero curvature blocks", worst_main, 1e-8,
               "(quartic4)");
        std::printf("     criterion  5: (Xbar,E)E block, diagnostic only: reading 0 residual "
                    "%.3e, reading 1 residual %.3e\n",
                    xee[0], xee[1]);
    }

    // 6. Ricci-table linearity with user parameters (U = 0, f = 0).
    {
        const auto& f = fixtures[1];
        Grid2<Expression> entries(4, Expression::constant(0.0, 4));
        entries(0, 0) = Expression::parse("x2^2", 4);
        entries(0, 2) = entries(2, 0) = Expression::parse("x1*x4/3", 4);
        entries(1, 1) = Expression::parse("1 + x3", 4);
        entries(1, 3) = entries(3, 1) = Expression::constant(-0.4, 4);
        const MatrixField shat = MatrixField::from_expressions(4, entries);
        const auto params =
            params_user(f.spec, shat, VectorField::zero(4), ScalarField::zero(4));
        const ConnectionField ccp = induced_connection(f.space, params);
        double worst = 0.0;
        for (const auto& p : f.p_points) {
            const Vec x(p.begin(), p.begin() + 4);
            const Mat rp = ricci_P_frame(f.space, ccp, p);
            const Mat r = ricci(f.spec.connection, x);
            const Mat sh = shat.values(x);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    worst = std::max(worst, std::abs(rp(i, j) - r(i, j) - 6.0 * sh(i, j)));
        }
        report(6, "Ricci row affine in shat: r_P = r + 2(n+1) shat", worst, 1e-9, "(quartic4)");
    }

    // 7. Hamiltonian lifts on flat4: lift identity and bracket homomorphism.
    {
        const auto& f = fixtures[0];
        auto mk = [&](const char* name, std::vector<const char*> field, const char* ham) {
            HamiltonianPair hp;
            hp.name = name;
            for (const char* s : field) hp.field.push_back(Expression::parse(s, 4));
            hp.hamiltonian = Expression::parse(ham, 4);
            return hp;
        };
        const std::vector<HamiltonianPair> family = {
            mk("p1", {"0", "0", "1", "0"}, "x1"),
            mk("p2", {"0", "0", "0", "1"}, "x2"),
            mk("scale", {"0 - x1", "0", "x3", "0"}, "x1*x3"),
        };
        double worst_lift = 0.0, worst_bracket = 0.0;
        for (const auto& hp : family)
            worst_lift = std::max(
                worst_lift, verify_hamiltonian_lift(hp, f.space, f.p_points).lift_identity);
        for (size_t i = 0; i < family.size(); ++i)
            for (size_t j = i + 1; j < family.size(); ++j)
                worst_bracket = std::max(
                    worst_bracket, bracket_residual(family[i], family[j], f.space, f.p_points));
        report(7, "lift identity i(X~)mu = d(e^{2s} f)", worst_lift, 1e-9, "(flat4)");
        report(7, "bracket homomorphism of lifted fields", worst_bracket, 1e-9, "(flat4)");
    }

    // 8. Reduction round trip.
    for (const auto& f : fixtures) {
        const SigmaLevel level = locate_sigma(f.space);
        double worst_gamma = 0.0, worst_form = 0.0;
        for (const auto& x : f.m_points) {
            const auto gamma_in = f.spec.connection.christoffels(x);
            const Mat om = f.spec.omega.values(x);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const Vec red = reduced_connection(level, f.space, f.ccp, x, i, j);
                    for (int k = 0; k < 4; ++k)
                        worst_gamma = std::max(worst_gamma,
                                               std::abs(red[k] - gamma_in(k, i, j)));
                    Vec ei(4, 0.0), ej(4, 0.0);
                    ei[i] = 1.0;
                    ej[j] = 1.0;
                    worst_form = std::max(
                        worst_form, std::abs(reduced_form(level, f.space, x, ei, ej) -
                                             0.5 * om(i, j)));
                }
        }
        report(8, "reduction recovers the input Christoffels", worst_gamma, 1e-9,
               "(" + f.name + ")");
        report(8, "reduced form equals omega/2", worst_form, 1e-10, "(" + f.name + ")");
        report(8, "constraint level matches -ln(2)/2", level.closed_form_defect, 1e-12,
               "(" + f.name + ")");
    }

    // 9. Jet-computed curvature and Ricci against central finite differences.
    for (const auto& f : fixtures) {
        double worst = 0.0;
        for (int c = 0; c < 3; ++c) {
            // on the base chart
            const Vec& x = f.m_points[c];
            const auto rm = curvature(f.spec.connection, x);
            const auto rf = oracle::fd_curvature(f.spec.connection, x);
            const Mat ricm = ricci(f.spec.connection, x);
            const Mat ricf = oracle::fd_ricci(f.spec.connection, x);
            double scale = std::max(1.0, max_abs_grid(rf));
            auto it = rm.begin();
            for (const double v : rf) worst = std::max(worst, std::abs(*it++ - v) / scale);
            auto it2 = ricm.begin();
            for (const double v : ricf) worst = std::max(worst, std::abs(*it2++ - v) / scale);

            // and on the induced chart
            const Vec& p = f.p_points[c];
            const auto rp = curvature(f.ccp, p);
            const auto rpf = oracle::fd_curvature(f.ccp, p);
            const Mat ricp = ricci_P(f.ccp, p);
            const Mat ricpf = oracle::fd_ricci(f.ccp, p);
            scale = std::max(1.0, max_abs_grid(rpf));
            auto it3 = rp.begin();
            for (const double v : rpf) worst = std::max(worst, std::abs(*it3++ - v) / scale);
            auto it4 = ricp.begin();
            for (const double v : ricpf) worst = std::max(worst, std::abs(*it4++ - v) / scale);
        }
        report(9, "jet derivatives match finite differences (relative)", worst, 1e-5,
               "(" + f.name + ")");
    }

    // 10. Determinism: identical config and seed give byte-identical reports.
    {
        ManifoldConfig cfg;
        cfg.fixture = "quartic4";
        cfg.samples = 8;
        cfg.seed = seed;
        const std::string a = emit_report(run(Command::All, cfg), "json");
        const std::string b = emit_report(run(Command::All, cfg), "json");
        report_bool(10, "byte-identical json reports for identical config+seed", a == b,
                    a == b ? "" : "reports differ");
    }

    std::printf("%s: %d criterion failures\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures);
    return g_failures;
}
