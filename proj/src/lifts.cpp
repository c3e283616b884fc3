#include "scl/lifts.hpp"

#include <cmath>

namespace scl {

namespace {

Vec m_part(const InducedSpace& space, PointView p) {
    return Vec(p.begin(), p.begin() + space.mdim());
}

Vec n_part(const InducedSpace& space, PointView p) {
    return Vec(p.begin(), p.begin() + space.mdim() + 1); // (x, t)
}

// i(X) omega - d f as a one-form on M.
Vec pair_defect(const HamiltonianPair& hp, const ExactSymplecticSpec& spec, PointView x) {
    const int d = spec.chart.dim;
    const Mat om = spec.omega.values(x);
    Vec out(d, 0.0);
    const Jet fj = hp.hamiltonian.eval_jet(x.first(d), 1);
    for (int j = 0; j < d; ++j) {
        double v = -fj.derivative(j).value();
        for (int i = 0; i < d; ++i) v += hp.field[i].eval(x.first(d)) * om(i, j);
        out[j] = v;
    }
    return out;
}

} // namespace

double hamiltonian_pair_residual(const HamiltonianPair& hp, const ExactSymplecticSpec& spec,
                                 const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (const auto& x : samples) worst = std::max(worst, max_abs(pair_defect(hp, spec, x)));
    return worst;
}

Vec hamiltonian_vector(const ExactSymplecticSpec& spec, const Expression& f, PointView x) {
    const int d = spec.chart.dim;
    const Mat pi = omega_inverse(spec.omega, x);
    const Jet fj = f.eval_jet(x.first(d), 1);
    Vec out(d, 0.0);
    for (int k = 0; k < d; ++k) {
        double v = 0.0;
        for (int j = 0; j < d; ++j) v -= pi(k, j) * fj.derivative(j).value();
        out[k] = v;
    }
    return out;
}

VectorField hamiltonian_lift(const HamiltonianPair& hp, const InducedSpace& space) {
    const int pd = space.pdim();
    InducedSpace sp = space;
    HamiltonianPair pair = hp;
    return VectorField(pd, 0, [sp, pair](PointView p, int order) {
        const int d = sp.mdim(), pd = sp.pdim();
        const Vec x = m_part(sp, p);
        std::vector<int> map(d);
        for (int v = 0; v < d; ++v) map[v] = v;
        std::vector<Jet> out(pd, Jet::constant(pd, order, 0.0));
        Jet tcomp = -pair.hamiltonian.eval_jet(x, order).extended(pd, map);
        auto lj = sp.base.lambda.jets(x, order);
        for (int i = 0; i < d; ++i) {
            const Jet xi = pair.field[i].eval_jet(x, order).extended(pd, map);
            out[i] = xi;
            tcomp -= lj[i].extended(pd, map) * xi;
        }
        out[sp.t_index()] = tcomp;
        return out;
    });
}

LiftCheck verify_hamiltonian_lift(const HamiltonianPair& hp, const InducedSpace& space,
                                  const std::vector<Vec>& samples) {
    LiftCheck c;
    const int d = space.mdim(), pd = space.pdim();
    const VectorField lift = hamiltonian_lift(hp, space);
    const TwoFormField mu = space.mu();
    auto identity_defect = [&](PointView p) {
        const Vec x = m_part(space, p);
        const Mat muv = mu.values(p);
        const Vec xt = lift.values(p);
        const double e2s = std::exp(2.0 * p[space.s_index()]);
        const double fx = hp.hamiltonian.eval(x);
        const Jet fj = hp.hamiltonian.eval_jet(x, 1);
        double worst = 0.0;
        for (int nu = 0; nu < pd; ++nu) {
            double v = 0.0;
            for (int m = 0; m < pd; ++m) v += xt[m] * muv(m, nu);
            double dnu = 0.0;
            if (nu < d) dnu = e2s * fj.derivative(nu).value();
            if (nu == space.s_index()) dnu = 2.0 * e2s * fx;
            worst = std::max(worst, std::abs(v - dnu));
        }
        return worst;
    };
    for (const auto& p : samples) {
        c.lift_identity = std::max(c.lift_identity, identity_defect(p));
        // the moment on the s = 0 slice, where e^{2s} f_X reduces to f_X
        Vec p0(p.begin(), p.end());
        p0[space.s_index()] = 0.0;
        c.moment = std::max(c.moment, identity_defect(p0));
        c.symplectic = std::max(c.symplectic, max_abs_grid(lie_derivative_two_form(lift, mu, p)));
    }
    return c;
}

double bracket_residual(const HamiltonianPair& a, const HamiltonianPair& b,
                        const InducedSpace& space, const std::vector<Vec>& samples) {
    const int d = space.mdim(), pd = space.pdim();
    const VectorField la = hamiltonian_lift(a, space);
    const VectorField lb = hamiltonian_lift(b, space);
    double worst = 0.0;
    for (const auto& p : samples) {
        const Vec x = m_part(space, p);
        auto ja = la.jets(p, 1);
        auto jb = lb.jets(p, 1);
        // coordinate bracket of the two lifts at p
        Vec br(pd, 0.0);
        for (int m = 0; m < pd; ++m) {
            double s = 0.0;
            for (int nu = 0; nu < pd; ++nu)
                s += ja[nu].value() * jb[m].derivative(nu).value() -
                     jb[nu].value() * ja[m].derivative(nu).value();
            br[m] = s;
        }
        // [X, Y] on M and its Hamiltonian f_{[X,Y]} = X f_Y
        Vec mxy(d, 0.0);
        double fxy = 0.0;
        const Jet fb = b.hamiltonian.eval_jet(x, 1);
        for (int k = 0; k < d; ++k) {
            const Jet yk = b.field[k].eval_jet(x, 1);
            const Jet xk = a.field[k].eval_jet(x, 1);
            double s = 0.0;
            for (int i = 0; i < d; ++i)
                s += a.field[i].eval(x) * yk.derivative(i).value() -
                     b.field[i].eval(x) * xk.derivative(i).value();
            mxy[k] = s;
            fxy += a.field[k].eval(x) * fb.derivative(k).value();
        }
        // tilde([X,Y]) coordinates: (mxy, -lambda(mxy) - fxy, 0)
        const Vec lam = space.base.lambda.values(x);
        Vec tilde(pd, 0.0);
        double tc = -fxy;
        for (int i = 0; i < d; ++i) {
            tilde[i] = mxy[i];
            tc -= lam[i] * mxy[i];
        }
        tilde[space.t_index()] = tc;
        for (int m = 0; m < pd; ++m) worst = std::max(worst, std::abs(br[m] - tilde[m]));
    }
    return worst;
}

double conformal_field_residual(const ConformalData& cd, const ExactSymplecticSpec& spec,
                                const std::vector<Vec>& samples) {
    VectorField c = VectorField::from_expressions(spec.chart.dim, cd.field);
    double worst = 0.0;
    for (const auto& x : samples) {
        const Mat lc = lie_derivative_two_form(c, spec.omega, x);
        const Mat om = spec.omega.values(x);
        for (int i = 0; i < spec.chart.dim; ++i)
            for (int j = 0; j < spec.chart.dim; ++j)
                worst = std::max(worst, std::abs(lc(i, j) - om(i, j)));
    }
    return worst;
}

namespace {

// alpha - pi* i(C) omega on N, components over (x1..x2n, t).
Vec eta_form(const ConformalData& cd, const InducedSpace& space, PointView x) {
    const int d = space.mdim();
    const Mat om = space.base.omega.values(x);
    const Vec lam = space.base.lambda.values(x);
    Vec eta(d + 1, 0.0);
    for (int j = 0; j < d; ++j) {
        double icw = 0.0;
        for (int i = 0; i < d; ++i) icw += cd.field[i].eval(x.first(d)) * om(i, j);
        eta[j] = lam[j] - icw;
    }
    eta[d] = 1.0; // the dt component of alpha
    return eta;
}

PotentialCheck check_potential(const Expression& pot, const ConformalData& cd,
                               const InducedSpace& space, const std::vector<Vec>& samples,
                               bool require_unit_rate) {
    PotentialCheck c;
    const int d = space.mdim();
    for (const auto& p : samples) {
        const Vec xt = n_part(space, p);
        const Jet bj = pot.eval_jet(xt, 1);
        if (require_unit_rate)
            c.z_rate = std::max(c.z_rate, std::abs(bj.derivative(d).value() - 1.0));
        const Vec eta = eta_form(cd, space, xt);
        for (int nu = 0; nu <= d; ++nu)
            c.d_match = std::max(c.d_match, std::abs(bj.derivative(nu).value() - eta[nu]));
    }
    return c;
}

// Cbar + g E (+ l d_s) with g a function on N.
VectorField lifted_conformal(const ConformalData& cd, const InducedSpace& space,
                             const Expression& g, double l) {
    const int pd = space.pdim();
    InducedSpace sp = space;
    ConformalData data = cd;
    Expression pot = g;
    return VectorField(pd, 0, [sp, data, pot, l](PointView p, int order) {
        const int d = sp.mdim(), pd = sp.pdim();
        const Vec x = m_part(sp, p);
        const Vec xt = n_part(sp, p);
        std::vector<int> mmap(d);
        for (int v = 0; v < d; ++v) mmap[v] = v;
        std::vector<int> nmap(d + 1);
        for (int v = 0; v <= d; ++v) nmap[v] = v; // t keeps its slot
        std::vector<Jet> out(pd, Jet::constant(pd, order, 0.0));
        Jet tcomp = pot.eval_jet(xt, order).extended(pd, nmap);
        auto lj = sp.base.lambda.jets(x, order);
        for (int i = 0; i < d; ++i) {
            const Jet ci = data.field[i].eval_jet(x, order).extended(pd, mmap);
            out[i] = ci;
            tcomp -= lj[i].extended(pd, mmap) * ci;
        }
        out[sp.t_index()] = tcomp;
        if (l != 0.0) out[sp.s_index()] = Jet::constant(pd, order, l);
        return out;
    });
}

} // namespace

PotentialCheck check_potential_b(const ConformalData& cd, const InducedSpace& space,
                                 const std::vector<Vec>& samples) {
    if (!cd.b) throw EvalError("conformal lift requires the potential b");
    return check_potential(*cd.b, cd, space, samples, true);
}

PotentialCheck check_potential_a(const ConformalData& cd, const InducedSpace& space,
                                 const std::vector<Vec>& samples) {
    if (!cd.a) throw EvalError("conformal lift requires the potential a");
    return check_potential(*cd.a, cd, space, samples, false);
}

VectorField conformal_lift_1(const ConformalData& cd, const InducedSpace& space) {
    if (!cd.b) throw EvalError("conformal lift requires the potential b");
    return lifted_conformal(cd, space, *cd.b, 0.0);
}

double conformal_lift_1_residual(const ConformalData& cd, const InducedSpace& space,
                                 const std::vector<Vec>& samples) {
    const VectorField lift = conformal_lift_1(cd, space);
    const TwoFormField mu = space.mu();
    double worst = 0.0;
    for (const auto& p : samples) {
        const Mat lc = lie_derivative_two_form(lift, mu, p);
        const Mat muv = mu.values(p);
        for (int i = 0; i < space.pdim(); ++i)
            for (int j = 0; j < space.pdim(); ++j)
                worst = std::max(worst, std::abs(lc(i, j) - muv(i, j)));
    }
    return worst;
}

VectorField conformal_lift_2(const ConformalData& cd, const InducedSpace& space) {
    if (!cd.a) throw EvalError("conformal lift requires the potential a");
    return lifted_conformal(cd, space, *cd.a, -0.5);
}

Lift2Check verify_conformal_lift_2(const ConformalData& cd, const InducedSpace& space,
                                   const std::vector<Vec>& samples) {
    Lift2Check c;
    const VectorField lift = conformal_lift_2(cd, space);
    const TwoFormField mu = space.mu();
    const int d = space.mdim(), pd = space.pdim();
    for (const auto& p : samples) {
        c.lie = std::max(c.lie, max_abs_grid(lie_derivative_two_form(lift, mu, p)));
        // moment: i(C2) mu = d(-a e^{2s})
        const Mat muv = mu.values(p);
        const Vec v = lift.values(p);
        const Vec xt = n_part(space, p);
        const double e2s = std::exp(2.0 * p[space.s_index()]);
        const Jet aj = cd.a->eval_jet(xt, 1);
        for (int nu = 0; nu < pd; ++nu) {
            double lhs = 0.0;
            for (int m = 0; m < pd; ++m) lhs += v[m] * muv(m, nu);
            double rhs = 0.0;
            if (nu <= d) rhs = -e2s * aj.derivative(nu).value();
            if (nu == space.s_index()) rhs = -2.0 * e2s * aj.value();
            c.moment = std::max(c.moment, std::abs(lhs - rhs));
        }
    }
    return c;
}

} // namespace scl
