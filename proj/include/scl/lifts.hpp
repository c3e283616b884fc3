#pragma once

#include <optional>

#include "scl/induction.hpp"

namespace scl {

/// A Hamiltonian vector field X on M together with its Hamiltonian f_X,
/// i(X) omega = d f_X. Components are expressions over the M chart.
struct HamiltonianPair {
    std::string name;
    std::vector<Expression> field;
    Expression hamiltonian;
};

/// max |i(X) omega - d f_X| over the samples (the defining invariant).
double hamiltonian_pair_residual(const HamiltonianPair& hp, const ExactSymplecticSpec& spec,
                                 const std::vector<Vec>& samples);

/// X_f with i(X_f) omega = d f: components X^k = -pi^{kj} d_j f.
Vec hamiltonian_vector(const ExactSymplecticSpec& spec, const Expression& f, PointView x);

/// The lift Xtilde = Xbarbar - (f_X o p) E on P; in coordinates
/// (X^1..X^2n, -lambda(X) - f_X, 0).
VectorField hamiltonian_lift(const HamiltonianPair& hp, const InducedSpace& space);

struct LiftCheck {
    double lift_identity = 0.0; // |i(Xtilde) mu - d(e^{2s} f_X)|
    double moment = 0.0;        // |moment at s=0 - f_X|
    double symplectic = 0.0;    // |L_{Xtilde} mu|
};
LiftCheck verify_hamiltonian_lift(const HamiltonianPair& hp, const InducedSpace& space,
                                  const std::vector<Vec>& samples);

/// max |[Xtilde, Ytilde] - ([X, Y])tilde| over samples, with the bracket's
/// Hamiltonian f_{[X,Y]} = X f_Y.
double bracket_residual(const HamiltonianPair& a, const HamiltonianPair& b,
                        const InducedSpace& space, const std::vector<Vec>& samples);

/// A conformal vector field C on M (L_C omega = omega) with optional lift
/// potentials: b on N = M x R_t (for the conformal lift, Zb = 1) and a on N
/// (for the Hamiltonian lift). Both satisfy d(potential) = alpha - pi* i(C) omega.
struct ConformalData {
    std::vector<Expression> field;
    std::optional<Expression> b;
    std::optional<Expression> a;
};

/// max |L_C omega - omega| over samples.
double conformal_field_residual(const ConformalData& cd, const ExactSymplecticSpec& spec,
                                const std::vector<Vec>& samples);

struct PotentialCheck {
    double z_rate = 0.0; // |Zb - 1| (b only; 0 for a)
    double d_match = 0.0; // |d(potential) - (alpha - pi* i(C) omega)|
};
PotentialCheck check_potential_b(const ConformalData& cd, const InducedSpace& space,
                                 const std::vector<Vec>& samples);
PotentialCheck check_potential_a(const ConformalData& cd, const InducedSpace& space,
                                 const std::vector<Vec>& samples);

/// C1 = Cbar + (b o p1) E; conformal when db = alpha - pi* i(C) omega.
/// Throws EvalError when b is missing.
VectorField conformal_lift_1(const ConformalData& cd, const InducedSpace& space);
/// max |L_{C1} mu - mu| over samples.
double conformal_lift_1_residual(const ConformalData& cd, const InducedSpace& space,
                                 const std::vector<Vec>& samples);

/// C2 = Cbar + a E - d_s / 2; Hamiltonian with moment -a e^{2s}.
/// Throws EvalError when a is missing.
VectorField conformal_lift_2(const ConformalData& cd, const InducedSpace& space);
struct Lift2Check {
    double lie = 0.0;    // |L_{C2} mu|
    double moment = 0.0; // |i(C2) mu - d(-a e^{2s})|
};
Lift2Check verify_conformal_lift_2(const ConformalData& cd, const InducedSpace& space,
                                   const std::vector<Vec>& samples);

} // namespace scl
