#pragma once

#include <string>
#include <vector>

#include "scl/fields.hpp"
#include "scl/jet.hpp"
#include "scl/tensors.hpp"

namespace scl {

// Conventions used throughout:
//   R(d_i, d_j) d_k = R^l_{kij} d_l
//   R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
//             + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
//   r_{ij} = sum_l R^l_{jil}   (trace over the second curvature argument;
//            the slot choice is pinned by the induced-connection Ricci table
//            and the Ricci-flatness target)

/// (d lambda)_{ij} = d_i lambda_j - d_j lambda_i.
Mat d_one_form(const OneFormField& lambda, PointView p);

/// (d omega)_{ijk} = d_i omega_{jk} - d_j omega_{ik} + d_k omega_{ij}.
Grid3<double> d_two_form(const TwoFormField& omega, PointView p);

struct SymplecticVerdict {
    bool pass = false;
    bool closed = false;
    bool nondegenerate = false;
    double max_d = 0.0;    // worst |d omega| entry over the samples
    double min_det = 0.0;  // smallest |det omega| over the samples
    std::string diagnostic;
};

/// Passes iff max |d omega| <= tol and |det omega| >= det_floor at every sample.
SymplecticVerdict check_symplectic(const TwoFormField& omega, const std::vector<Vec>& samples,
                                   double tol, double det_floor = 1e-9);

/// pi^{ij} with pi^{ij} omega_{jk} = delta^i_k. Throws on singular forms.
Mat omega_inverse(const TwoFormField& omega, PointView p);
Grid2<Jet> omega_inverse_jets(const TwoFormField& omega, PointView p, int order);

/// Gauss-Jordan inverse of a matrix of jets, pivoting on constant terms.
Grid2<Jet> invert_jet_matrix(const Grid2<Jet>& m);

/// T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji}.
Grid3<double> torsion(const ConnectionField& conn, PointView p);

/// (nabla omega)_{k;ij} = d_k omega_{ij} - Gamma^l_{ki} omega_{lj}
///                      - Gamma^l_{kj} omega_{il}.
Grid3<double> nabla_two_form(const ConnectionField& conn, const TwoFormField& omega, PointView p);

Grid4<double> curvature(const ConnectionField& conn, PointView p);
Grid4<Jet> curvature_jets(const ConnectionField& conn, PointView p, int order);

Mat ricci(const ConnectionField& conn, PointView p);
Grid2<Jet> ricci_jets(const ConnectionField& conn, PointView p, int order);

/// sigma^k_j = pi^{kl} b_{lj}, solving omega(X, sigma Y) = b(X, Y).
/// Rejects non-symmetric b.
Mat endo_from_bilinear(const TwoFormField& omega, const Mat& b, PointView p);
Grid2<Jet> endo_from_bilinear_jets(const Grid2<Jet>& pi, const Grid2<Jet>& b);

/// Ricci endomorphism rho with omega(X, rho Y) = r(X, Y).
Mat rho_endomorphism(const ConnectionField& conn, const TwoFormField& omega, PointView p);

/// (nabla_i A)^k_j = d_i A^k_j + Gamma^k_{il} A^l_j - Gamma^l_{ij} A^k_l.
Grid3<double> covariant_derivative_endo(const ConnectionField& conn, const MatrixField& a,
                                        PointView p);
Grid3<Jet> covariant_derivative_endo_jets(const ConnectionField& conn, const MatrixField& a,
                                          PointView p, int order);

/// (nabla_i V)^k = d_i V^k + Gamma^k_{il} V^l.
Grid2<double> covariant_derivative_vector(const ConnectionField& conn, const VectorField& v,
                                          PointView p);
Grid2<Jet> covariant_derivative_vector_jets(const ConnectionField& conn, const VectorField& v,
                                            PointView p, int order);

/// Trace part of the curvature, built from the Ricci tensor alone:
/// E(X,Y)Z = c [2 omega(X,Y) rho Z - omega(Y,Z) rho X + omega(X,Z) rho Y
///             - r(Y,Z) X + r(X,Z) Y],  c = 1 / (2(n+1)).
Grid4<double> e_component(const ConnectionField& conn, const TwoFormField& omega, PointView p);
/// Same formula from raw ingredients (n from the matrix dimension).
Grid4<double> e_component_from(const Mat& ric, const Mat& rho, const Mat& omega);

/// W = R - E; all Ricci-type traces of W vanish for symplectic connections.
Grid4<double> w_component(const ConnectionField& conn, const TwoFormField& omega, PointView p);

/// Ricci contraction of an arbitrary curvature-like tensor, same slot
/// convention as `ricci`.
Mat ricci_trace(const Grid4<double>& r);

struct RicciTypeVerdict {
    bool pass = false;
    double max_w = 0.0;
};

/// Passes iff max |W| <= tol over the samples.
RicciTypeVerdict is_ricci_type(const ConnectionField& conn, const TwoFormField& omega,
                               const std::vector<Vec>& samples, double tol);

// --- derived fields on (M, omega, nabla) -----------------------------------

/// Ricci tensor as a differentiable field; depth = conn.depth + 1.
MatrixField ricci_field(ConnectionField conn);

/// Endomorphism field pi . b for a bilinear field b.
MatrixField endo_field(TwoFormField omega, MatrixField bilinear);

/// (nabla_i A)^k_j as a rank-3-contraction helper: returns the matrix field
/// M_i(v)... kept as explicit jet calls; see covariant_derivative_endo_jets.

/// The lift vector U with omega(U, .) = scale * Tr[Y -> nabla_Y sigma].
VectorField trace_lift_vector(ConnectionField conn, TwoFormField omega, MatrixField sigma,
                              double scale);

/// (nabla_i V)^k as a matrix field; depth = max(conn, v) + 1.
MatrixField nabla_vector_matrix(ConnectionField conn, VectorField v);

/// (L_V omega)_{ij} = V^r d_r omega_{ij} + omega_{rj} d_i V^r + omega_{ir} d_j V^r.
Mat lie_derivative_two_form(const VectorField& v, const TwoFormField& omega, PointView p);

/// (L_V nabla)(d_i, d_j) = [V, nabla_i d_j] - nabla_{[V, d_i]} d_j - nabla_i [V, d_j],
/// expanded on coordinate pairs:
///   V^r d_r G^s_{ij} - G^r_{ij} d_r V^s + G^s_{rj} d_i V^r + G^s_{ir} d_j V^r
///   + d_i d_j V^s.
Grid3<double> lie_derivative_connection(const VectorField& v, const ConnectionField& conn,
                                        PointView p);

/// Curvature assembled from centered finite differences of Christoffel
/// values (step h); the order-reduced in-run cross-check for the jet path.
Grid4<double> curvature_fd(const ConnectionField& conn, PointView p, double h = 1e-5);
Mat ricci_fd(const ConnectionField& conn, PointView p, double h = 1e-5);

} // namespace scl
