#pragma once

#include "scl/induction.hpp"

namespace scl {

/// The constraint level mu(S, E) = 1 inside the induced model, solved
/// numerically from the pairing (never hard-coded) and cross-checked against
/// the closed form -ln(2)/2.
struct SigmaLevel {
    double s0 = 0.0;
    double pairing_defect = 0.0;    // |mu(S,E) - 1| at s0
    double closed_form_defect = 0.0; // |s0 + ln(2)/2|
};

SigmaLevel locate_sigma(const InducedSpace& space);

/// Reduced 2-form: omega_red(Y1, Y2) at x is mu_y(Y1bar, Y2bar) with the
/// horizontal lifts taken at y = (x, t, s0); equals e^{2 s0} omega = omega/2
/// in the induced model.
double reduced_form(const SigmaLevel& level, const InducedSpace& space, PointView x,
                    const Vec& y1, const Vec& y2, double t = 0.0);

/// omega_red as a differentiable 2-form field on the M chart, evaluated
/// honestly through mu and the horizontal frame.
TwoFormField reduced_form_field(const SigmaLevel& level, const InducedSpace& space,
                                double t = 0.0);

/// nabla^Sigma_A B = nabla^P_A B - mu(nabla^P_A B, E) S for Sigma-tangent
/// fields A, B; jets so that t-derivatives are available to callers.
/// Throws on inputs not tangent to Sigma (nonzero d_s component at y).
std::vector<Jet> sigma_connection_jets(const SigmaLevel& level, const InducedSpace& space,
                                       const ConnectionField& ccp, const VectorField& a,
                                       const VectorField& b, PointView y, int order);
Vec sigma_connection(const SigmaLevel& level, const InducedSpace& space,
                     const ConnectionField& ccp, const VectorField& a, const VectorField& b,
                     PointView y);

/// (nabla^M_{d_i} d_j)(x) expressed in the adapted frame (first 2n entries
/// are the reduced Christoffels Gamma^k_{ij}; the E and S entries measure
/// the defect of horizontality and must vanish).
Vec reduced_connection(const SigmaLevel& level, const InducedSpace& space,
                       const ConnectionField& ccp, PointView x, int i, int j, double t = 0.0);

/// The reduced connection as a ConnectionField (order-0 evaluations only).
ConnectionField reduced_connection_field(const SigmaLevel& level, const InducedSpace& space,
                                         const ConnectionField& ccp, double t = 0.0);

struct RoundTripTolerances {
    double christoffels = 1e-9; // |nabla^M - nabla|
    double form = 1e-10;        // |omega_red - omega/2|
    double s0 = 1e-12;
    double torsion = 1e-10;     // nabla^Sigma and nabla^M torsion, L_E nabla^Sigma
    double symplectic = 1e-9;   // nabla^M omega_red
};

/// Induce-then-reduce round trip: recovers the input Christoffels and the
/// half-scaled form; records the scale ledger. With `apply_scale_ledger`
/// false the form is compared against the unscaled omega (demonstrating the
/// documented factor), and that record is expected to fail.
VerificationReport roundtrip_report(const ExactSymplecticSpec& spec, int samples, uint64_t seed,
                                    const RoundTripTolerances& tol = {},
                                    bool apply_scale_ledger = true);

} // namespace scl
