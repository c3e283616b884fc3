#include "scl/runner.hpp"

#include <cmath>

#include "scl/geometry.hpp"
#include "scl/induction.hpp"
#include "scl/lifts.hpp"
#include "scl/reduction.hpp"

namespace scl {

Command parse_command(const std::string& name) {
    if (name == "check") return Command::Check;
    if (name == "induce") return Command::Induce;
    if (name == "lift") return Command::Lift;
    if (name == "reduce") return Command::Reduce;
    if (name == "roundtrip") return Command::Roundtrip;
    if (name == "all") return Command::All;
    throw ConfigError("unknown command '" + name +
                      "' (expected check|induce|lift|reduce|roundtrip|all)");
}

namespace {

VerificationReport check_report(const ExactSymplecticSpec& spec, const ManifoldConfig& cfg) {
    VerificationReport rep;
    rep.seed = cfg.seed;
    const int d = spec.chart.dim;
    const auto pts = sample_points(d, cfg.samples, cfg.seed);

    const SymplecticVerdict sv = check_symplectic(spec.omega, pts, cfg.tol);
    rep.add("omega closed (d omega = 0)", "Def 1.1", sv.max_d, cfg.tol);
    rep.add("omega nondegenerate", "Def 1.1", sv.nondegenerate ? 0.0 : 1.0, 0.5);
    rep.scale_ledger["min_abs_det_omega"] = sv.min_det;

    double r_torsion = 0.0, r_nabla = 0.0, r_ric_sym = 0.0, r_bianchi = 0.0;
    double r_lowered = 0.0, r_split = 0.0, r_wtrace = 0.0, r_etrace = 0.0, r_fd = 0.0;
    for (const auto& p : pts) {
        r_torsion = std::max(r_torsion, max_abs_grid(torsion(spec.connection, p)));
        r_nabla = std::max(r_nabla, max_abs_grid(nabla_two_form(spec.connection, spec.omega, p)));

        const Grid4<double> r = curvature(spec.connection, p);
        const Mat ric = ricci_trace(r);
        const Mat om = spec.omega.values(p);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                r_ric_sym = std::max(r_ric_sym, std::abs(ric(i, j) - ric(j, i)));
        for (int l = 0; l < d; ++l)
            for (int k = 0; k < d; ++k)
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        r_bianchi = std::max(r_bianchi, std::abs(r(l, k, i, j) + r(l, i, j, k) +
                                                                 r(l, j, k, i)));
                        double low = 0.0, low_t = 0.0;
                        for (int m = 0; m < d; ++m) {
                            low += om(l, m) * r(m, k, i, j);
                            low_t += om(k, m) * r(m, l, i, j);
                        }
                        r_lowered = std::max(r_lowered, std::abs(low - low_t));
                    }
        const Grid4<double> e = e_component(spec.connection, spec.omega, p);
        const Grid4<double> w = w_component(spec.connection, spec.omega, p);
        for (int l = 0; l < d; ++l)
            for (int k = 0; k < d; ++k)
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        r_split = std::max(r_split, std::abs(e(l, k, i, j) + w(l, k, i, j) -
                                                             r(l, k, i, j)));
        r_wtrace = std::max(r_wtrace, max_abs_grid(ricci_trace(w)));
        const Mat etr = ricci_trace(e);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                r_etrace = std::max(r_etrace, std::abs(etr(i, j) - ric(i, j)));
    }
    // order-reduced finite-difference cross-check at three points
    for (size_t c = 0; c < 3 && c < pts.size(); ++c) {
        const Grid4<double> rj = curvature(spec.connection, pts[c]);
        const Grid4<double> rf = curvature_fd(spec.connection, pts[c]);
        const Mat ricj = ricci_trace(rj);
        const Mat ricf = ricci_fd(spec.connection, pts[c]);
        const double scale = std::max(1.0, max_abs_grid(rf));
        double diff = 0.0;
        auto it = rj.begin();
        for (const double x : rf) diff = std::max(diff, std::abs(*it++ - x));
        auto it2 = ricj.begin();
        for (const double x : ricf) diff = std::max(diff, std::abs(*it2++ - x));
        r_fd = std::max(r_fd, diff / scale);
    }

    rep.add("connection torsion-free", "Introduction", r_torsion, 1e-10);
    rep.add("nabla omega = 0", "Introduction", r_nabla, cfg.tol);
    rep.add("Ricci tensor symmetric", "Introduction", r_ric_sym, 1e-10);
    rep.add("first Bianchi identity", "Introduction", r_bianchi, 1e-10);
    rep.add("lowered curvature symmetric in first pair", "Introduction", r_lowered, 1e-9);
    rep.add("curvature splits as E + W", "Introduction", r_split, 1e-12);
    rep.add("W component trace-free", "Introduction", r_wtrace, 1e-9);
    rep.add("E component carries the Ricci trace", "Introduction", r_etrace, 1e-10);
    rep.add("jet curvature matches finite differences", "Introduction", r_fd, cfg.tol_fd);

    const RicciTypeVerdict rt = is_ricci_type(spec.connection, spec.omega, pts, 1e-3);
    rep.scale_ledger["max_w_component"] = rt.max_w;
    rep.notes.push_back(rt.pass ? "connection is Ricci-type (W = 0)"
                                : "connection is not Ricci-type (W != 0)");
    return rep;
}

VerificationReport lift_report(const ExactSymplecticSpec& spec, const ManifoldConfig& cfg) {
    if (cfg.hamiltonian.empty() && !cfg.conformal)
        throw ConfigError("lift command requires [lifts.hamiltonian.*] or [lifts.conformal]");
    VerificationReport rep;
    rep.seed = cfg.seed;
    const InducedSpace space = build_quadruple(spec);
    const int d = spec.chart.dim;
    const auto m_pts = sample_points(d, cfg.samples, cfg.seed);
    const auto p_pts = sample_points(space.pdim(), cfg.samples, cfg.seed, space.s_index());

    std::vector<HamiltonianPair> pairs;
    for (const auto& fam : cfg.hamiltonian) {
        if (static_cast<int>(fam.field.size()) != d || fam.hamiltonian.empty())
            throw ConfigError("lift family '" + fam.name + "' needs v1..v" + std::to_string(d) +
                              " and f");
        HamiltonianPair hp;
        hp.name = fam.name;
        try {
            for (const auto& s : fam.field) hp.field.push_back(Expression::parse(s, d));
            hp.hamiltonian = Expression::parse(fam.hamiltonian, d);
        } catch (const ParseError& e) {
            throw ConfigError("lift family '" + fam.name + "': " + e.what());
        }
        pairs.push_back(std::move(hp));
    }
    for (const auto& hp : pairs) {
        rep.add("pair '" + hp.name + "' is Hamiltonian (i(X)omega = df)", "Sec 2",
                hamiltonian_pair_residual(hp, spec, m_pts), 1e-10);
        const LiftCheck c = verify_hamiltonian_lift(hp, space, p_pts);
        rep.add("lift '" + hp.name + "': i(X~)mu = d(e^{2s} f)", "Lemma 2.2", c.lift_identity,
                1e-9);
        rep.add("lift '" + hp.name + "': moment reduces to f at s=0", "Lemma 2.2", c.moment,
                1e-9);
        rep.add("lift '" + hp.name + "' symplectic (L mu = 0)", "Lemma 2.2", c.symplectic, 1e-9);
    }
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = i + 1; j < pairs.size(); ++j)
            rep.add("bracket homomorphism '" + pairs[i].name + "','" + pairs[j].name + "'",
                    "Lemma 2.2", bracket_residual(pairs[i], pairs[j], space, p_pts), 1e-9);

    if (cfg.conformal) {
        ConformalData cd;
        if (static_cast<int>(cfg.conformal->field.size()) != d)
            throw ConfigError("conformal field needs c1..c" + std::to_string(d));
        try {
            for (const auto& s : cfg.conformal->field) cd.field.push_back(Expression::parse(s, d));
            if (cfg.conformal->b) cd.b = Expression::parse(*cfg.conformal->b, d + 1);
            if (cfg.conformal->a) cd.a = Expression::parse(*cfg.conformal->a, d + 1);
        } catch (const ParseError& e) {
            throw ConfigError(std::string("conformal section: ") + e.what());
        }
        rep.add("conformal field (L_C omega = omega)", "Sec 2",
                conformal_field_residual(cd, spec, m_pts), 1e-10);
        const auto n_pts = sample_points(d + 1, cfg.samples, cfg.seed);
        if (cd.b) {
            const PotentialCheck pc = check_potential_b(cd, space, n_pts);
            rep.add("potential b: Zb = 1", "Sec 2", pc.z_rate, 1e-10);
            rep.add("potential b: db = alpha - i(C)omega", "Sec 2", pc.d_match, 1e-10);
            rep.add("conformal lift 1 (L mu = mu)", "Lemma 2.3",
                    conformal_lift_1_residual(cd, space, p_pts), 1e-9);
        }
        if (cd.a) {
            const PotentialCheck pc = check_potential_a(cd, space, n_pts);
            rep.add("potential a: da = alpha - i(C)omega", "Sec 2", pc.d_match, 1e-10);
            const Lift2Check c2 = verify_conformal_lift_2(cd, space, p_pts);
            rep.add("conformal lift 2 symplectic (L mu = 0)", "Lemma 2.3", c2.lie, 1e-9);
            rep.add("conformal lift 2 moment -a e^{2s}", "Lemma 2.3", c2.moment, 1e-9);
        }
    }
    return rep;
}

} // namespace

VerificationReport run(Command cmd, const ManifoldConfig& cfg) {
    set_jet_order_cap(cfg.jet_order_cap);
    const ExactSymplecticSpec spec = build_spec(cfg);
    VerificationReport rep;
    rep.fixture = cfg.fixture;
    rep.seed = cfg.seed;
    switch (cmd) {
        case Command::Check:
            rep.merge(check_report(spec, cfg));
            break;
        case Command::Induce:
            rep.merge(verify_theorem(spec, cfg.samples, cfg.seed));
            break;
        case Command::Lift:
            rep.merge(lift_report(spec, cfg));
            break;
        case Command::Reduce:
        case Command::Roundtrip:
            rep.merge(roundtrip_report(spec, cfg.samples, cfg.seed, {}, cfg.scale_ledger));
            break;
        case Command::All: {
            rep.merge(check_report(spec, cfg));
            rep.merge(verify_theorem(spec, cfg.samples, cfg.seed));
            if (!cfg.hamiltonian.empty() || cfg.conformal) rep.merge(lift_report(spec, cfg));
            rep.merge(roundtrip_report(spec, cfg.samples, cfg.seed, {}, cfg.scale_ledger));
            break;
        }
    }
    return rep;
}

int exit_code(const VerificationReport& report) { return report.overall() ? 0 : 1; }

} // namespace scl
