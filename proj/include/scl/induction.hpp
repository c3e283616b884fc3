#pragma once

#include "scl/fields.hpp"
#include "scl/geometry.hpp"
#include "scl/report.hpp"

namespace scl {

/// The coordinate model of the induced space P = M x R_t x R_s built from an
/// exact symplectic chart: coordinates (x^1..x^2n, t, s), contact form
/// alpha = dt + lambda, Reeb field Z = d_t, adapted frame
/// {Xbar_i = d_i - lambda_i d_t, E = d_t, S = d_s} and the symplectic form
/// mu = 2 e^{2s} ds ^ alpha + e^{2s} d alpha.
struct InducedSpace {
    ExactSymplecticSpec base;

    int mdim() const { return base.chart.dim; }
    int pdim() const { return base.chart.dim + 2; }
    int t_index() const { return base.chart.dim; }
    int s_index() const { return base.chart.dim + 1; }

    /// Components of alpha = dt + lambda on P.
    std::vector<Jet> alpha_jets(PointView p, int order) const;
    /// Frame matrix: column a holds the coordinate components of the a-th
    /// frame field (Xbar_1..Xbar_2n, E, S).
    Grid2<Jet> frame_jets(PointView p, int order) const;
    Mat frame(PointView p) const;
    /// Inverse: row a extracts the frame-a component of a coordinate vector.
    Grid2<Jet> frame_inverse_jets(PointView p, int order) const;
    Mat frame_inverse(PointView p) const;

    /// mu as a 2-form field on the (2n+2)-chart.
    TwoFormField mu() const;
    /// The frame fields as vector fields on P (for Lie-derivative checks).
    VectorField frame_field(int a) const;
};

/// Builds the induced space and verifies the construction invariants (Reeb
/// conditions, frame conditions, bracket table, d mu = 0, the mu pairings)
/// on a default sample set; throws EvalError with residuals on failure.
InducedSpace build_quadruple(const ExactSymplecticSpec& spec);

/// Residuals of the construction invariants over the given samples.
struct QuadrupleChecks {
    double reeb = 0.0;         // |alpha(Z) - 1| and |i(Z) d alpha|
    double frame = 0.0;        // |ds(Xbar)|, |alpha(Xbar)|, |p_* Xbar - X|
    double brackets = 0.0;     // bracket table, incl. [Xbar_i,Xbar_j] + omega_ij E
    double d_mu = 0.0;         // closedness of mu
    double mu_pairing = 0.0;   // mu(E,S) + 2 e^{2s}, i(E)mu + d(e^{2s})
    double conformal_s = 0.0;  // L_S mu - 2 mu and i(S)mu - 2 e^{2s} alpha
    double max() const;
};
QuadrupleChecks check_quadruple(const InducedSpace& space, const std::vector<Vec>& samples);

Mat mu_at(const InducedSpace& space, PointView p);

/// The free parameters (shat, sigma, U, f) of the induced connection,
/// realized as derived fields on M.
struct RicciFlatParameters {
    MatrixField shat;   // symmetric bilinear
    MatrixField sigma;  // endomorphism with omega(X, sigma Y) = shat(X, Y)
    VectorField u;      // lift vector
    ScalarField f;      // scalar term
};

/// The Ricci-flat choices: shat = -r/(2(n+1)), omega(U,.) = 2/(2n+1) Tr[nabla sigma],
/// f = Tr(rho^2)/(2n(n+1)^2) + Tr[nabla U]/n.
RicciFlatParameters ricci_flat_params(const ExactSymplecticSpec& spec);
/// Arbitrary shat; U and f derived from it by the same trace formulas (the
/// choices that keep the mixed and (E,E) Ricci rows zero).
RicciFlatParameters params_from_shat(const ExactSymplecticSpec& spec, MatrixField shat);
/// Fully user-supplied shat, U, f; sigma derived from shat.
RicciFlatParameters params_user(const ExactSymplecticSpec& spec, MatrixField shat, VectorField u,
                                ScalarField f);

/// The induced connection in the adapted frame: coefficient_jets(p, K)(c, a, b)
/// is the e_c coefficient of nabla_{e_a} e_b.
class FrameConnection {
public:
    FrameConnection(InducedSpace space, RicciFlatParameters params);

    Grid3<Jet> coefficient_jets(PointView p, int order) const;
    Grid3<double> coefficients(PointView p) const;
    const InducedSpace& space() const { return space_; }
    const RicciFlatParameters& params() const { return params_; }

private:
    InducedSpace space_;
    RicciFlatParameters params_;
};

/// Coordinate Christoffels of the frame connection:
/// Gamma^s_{mn} = B^a_m B^b_n (Gt^c_{ab} A^s_c - A^r_a d_r A^s_b).
ConnectionField frame_to_coordinate(const FrameConnection& fc);

/// Convenience: frame table + conversion in one step.
ConnectionField induced_connection(const InducedSpace& space, const RicciFlatParameters& params);

/// D(sigma,U)(Y,Y') = (nabla_Y sigma) Y' + omega(Y',U) Y / 2 - omega(Y,Y') U / 2.
Vec d_sigma_u(const ExactSymplecticSpec& spec, const RicciFlatParameters& params, PointView x,
              const Vec& y, const Vec& yp);

/// Direct coordinate curvature of the induced connection.
Grid4<double> curvature_direct(const ConnectionField& ccp, PointView p);

/// Direct curvature pushed to the adapted frame:
/// out(d, c, a, b) = component along e_d of R(e_a, e_b) e_c.
Grid4<double> curvature_in_frame(const InducedSpace& space, const ConnectionField& ccp,
                                 PointView p);

/// Closed-form frame curvature blocks. Returns the frame components of
/// R(e_a, e_b) e_c. Blocks involving d_s are identically zero. For the
/// (Xbar, E) E block the printed factor grouping is ambiguous;
/// `reading` 0 doubles the whole bracket (f X/2 - nabla_X U - 2 sigma^2 X),
/// `reading` 1 doubles only the f term.
Vec curvature_formula(const InducedSpace& space, const RicciFlatParameters& params, PointView p,
                      int a, int b, int c, int reading = 0);

Mat ricci_P(const ConnectionField& ccp, PointView p);
/// Ricci projected onto frame pairs: out(a, b) = r(e_a, e_b).
Mat ricci_P_frame(const InducedSpace& space, const ConnectionField& ccp, PointView p);

struct TheoremTolerances {
    double torsion = 1e-10;
    double nabla_mu = 1e-9;
    double ricci_flat = 1e-8;
    double affine = 1e-9;
    double lie_mu = 1e-10;
    double flatness = 1e-9;
    double ricci_type = 1e-3;
};

/// Aggregated verification of the induced-connection identities: torsion,
/// nabla mu, Ricci flatness, affinity and (where the base is Ricci-type)
/// flatness, over a seeded sample set on P.
VerificationReport verify_theorem(const ExactSymplecticSpec& spec, int samples, uint64_t seed,
                                  const TheoremTolerances& tol = {});

} // namespace scl
