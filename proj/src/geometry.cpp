#include "scl/geometry.hpp"

#include <cmath>
#include <sstream>

namespace scl {

Mat d_one_form(const OneFormField& lambda, PointView p) {
    const int d = lambda.dim();
    auto lj = lambda.jets(p, 1);
    Mat out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out(i, j) = lj[j].derivative(i).value() - lj[i].derivative(j).value();
    return out;
}

Grid3<double> d_two_form(const TwoFormField& omega, PointView p) {
    const int d = omega.dim();
    auto oj = omega.jets(p, 1);
    Grid3<double> out(d);
    auto part = [&](int a, int b, int c) { return oj(b, c).derivative(a).value(); };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                out(i, j, k) = part(i, j, k) - part(j, i, k) + part(k, i, j);
    return out;
}

SymplecticVerdict check_symplectic(const TwoFormField& omega, const std::vector<Vec>& samples,
                                   double tol, double det_floor) {
    SymplecticVerdict v;
    if (samples.empty()) throw std::invalid_argument("check_symplectic needs at least one sample");
    v.closed = true;
    v.nondegenerate = true;
    v.min_det = std::numeric_limits<double>::infinity();
    for (const auto& p : samples) {
        v.max_d = std::max(v.max_d, max_abs_grid(d_two_form(omega, p)));
        const double det = std::abs(determinant(omega.values(p)));
        v.min_det = std::min(v.min_det, det);
    }
    v.closed = v.max_d <= tol;
    v.nondegenerate = v.min_det >= det_floor;
    v.pass = v.closed && v.nondegenerate;
    std::ostringstream os;
    os << "max|d omega| = " << v.max_d << (v.closed ? " (closed)" : " (NOT closed)")
       << ", min|det| = " << v.min_det << (v.nondegenerate ? "" : " (degenerate)");
    v.diagnostic = os.str();
    return v;
}

Grid2<Jet> invert_jet_matrix(const Grid2<Jet>& m) {
    const int d = m.dim();
    if (d == 0) return m;
    const int nv = m(0, 0).nvars();
    const int order = m(0, 0).order();
    Grid2<Jet> a = m;
    Grid2<Jet> inv(d, Jet::constant(nv, order, 0.0));
    for (int i = 0; i < d; ++i) inv(i, i) = Jet::constant(nv, order, 1.0);
    for (int col = 0; col < d; ++col) {
        int pivot = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a(r, col).value()) > std::abs(a(pivot, col).value())) pivot = r;
        if (std::abs(a(pivot, col).value()) < 1e-12)
            throw EvalError("degenerate form: jet matrix not invertible at sample point");
        if (pivot != col)
            for (int j = 0; j < d; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        const Jet piv_inv = a(col, col).reciprocal();
        for (int j = 0; j < d; ++j) {
            a(col, j) = a(col, j) * piv_inv;
            inv(col, j) = inv(col, j) * piv_inv;
        }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            const Jet f = a(r, col);
            for (int j = 0; j < d; ++j) {
                a(r, j) = a(r, j) - f * a(col, j);
                inv(r, j) = inv(r, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

Grid2<Jet> omega_inverse_jets(const TwoFormField& omega, PointView p, int order) {
    return invert_jet_matrix(omega.jets(p, order));
}

Mat omega_inverse(const TwoFormField& omega, PointView p) {
    Mat m = omega.values(p);
    if (std::abs(determinant(m)) < 1e-12) throw EvalError("degenerate form at sample point");
    return invert(m);
}

Grid3<double> torsion(const ConnectionField& conn, PointView p) {
    const int d = conn.dim();
    auto g = conn.christoffels(p);
    Grid3<double> out(d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out(k, i, j) = g(k, i, j) - g(k, j, i);
    return out;
}

Grid3<double> nabla_two_form(const ConnectionField& conn, const TwoFormField& omega, PointView p) {
    const int d = conn.dim();
    auto g = conn.christoffels(p);
    auto oj = omega.jets(p, 1);
    Grid3<double> out(d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double v = oj(i, j).derivative(k).value();
                for (int l = 0; l < d; ++l)
                    v -= g(l, k, i) * oj(l, j).value() + g(l, k, j) * oj(i, l).value();
                out(k, i, j) = v;
            }
    return out;
}

Grid4<Jet> curvature_jets(const ConnectionField& conn, PointView p, int order) {
    const int d = conn.dim();
    auto g = conn.christoffel_jets(p, order + 1);
    Grid4<Jet> out(d);
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = i; j < d; ++j) {
                    Jet v = g(l, j, k).derivative(i) - g(l, i, k).derivative(j);
                    for (int m = 0; m < d; ++m)
                        v += (g(l, i, m) * g(m, j, k) - g(l, j, m) * g(m, i, k)).truncated(order);
                    out(l, k, i, j) = v;
                    if (j != i) out(l, k, j, i) = -v;
                }
    return out;
}

Grid4<double> curvature(const ConnectionField& conn, PointView p) {
    auto jets = curvature_jets(conn, p, 0);
    Grid4<double> out(conn.dim());
    auto it = out.begin();
    for (const auto& j : jets) *it++ = j.value();
    return out;
}

Mat ricci_trace(const Grid4<double>& r) {
    const int d = r.dim();
    Mat out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double v = 0.0;
            for (int l = 0; l < d; ++l) v += r(l, j, i, l);
            out(i, j) = v;
        }
    return out;
}

Mat ricci(const ConnectionField& conn, PointView p) { return ricci_trace(curvature(conn, p)); }

Grid2<Jet> ricci_jets(const ConnectionField& conn, PointView p, int order) {
    const int d = conn.dim();
    auto r = curvature_jets(conn, p, order);
    Grid2<Jet> out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Jet v = r(0, j, i, 0);
            for (int l = 1; l < d; ++l) v += r(l, j, i, l);
            out(i, j) = v;
        }
    return out;
}

Grid2<Jet> endo_from_bilinear_jets(const Grid2<Jet>& pi, const Grid2<Jet>& b) {
    const int d = pi.dim();
    Grid2<Jet> out(d);
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) {
            Jet v = pi(k, 0) * b(0, j);
            for (int l = 1; l < d; ++l) v += pi(k, l) * b(l, j);
            out(k, j) = v;
        }
    return out;
}

Mat endo_from_bilinear(const TwoFormField& omega, const Mat& b, PointView p) {
    const int d = omega.dim();
    double scale = 1.0, asym = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            scale = std::max(scale, std::abs(b(i, j)));
            asym = std::max(asym, std::abs(b(i, j) - b(j, i)));
        }
    if (asym > 1e-12 * scale)
        throw EvalError("endo_from_bilinear expects a symmetric bilinear form");
    Mat pi = omega_inverse(omega, p);
    return matmul(pi, b);
}

Mat rho_endomorphism(const ConnectionField& conn, const TwoFormField& omega, PointView p) {
    return endo_from_bilinear(omega, ricci(conn, p), p);
}

Grid3<Jet> covariant_derivative_endo_jets(const ConnectionField& conn, const MatrixField& a,
                                          PointView p, int order) {
    const int d = conn.dim();
    auto aj = a.jets(p, order + 1);
    auto g = conn.christoffel_jets(p, order);
    Grid3<Jet> out(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j) {
                Jet v = aj(k, j).derivative(i);
                for (int l = 0; l < d; ++l)
                    v += (g(k, i, l) * aj(l, j) - g(l, i, j) * aj(k, l)).truncated(order);
                out(i, k, j) = v;
            }
    return out;
}

Grid3<double> covariant_derivative_endo(const ConnectionField& conn, const MatrixField& a,
                                        PointView p) {
    auto jets = covariant_derivative_endo_jets(conn, a, p, 0);
    Grid3<double> out(conn.dim());
    auto it = out.begin();
    for (const auto& j : jets) *it++ = j.value();
    return out;
}

Grid2<Jet> covariant_derivative_vector_jets(const ConnectionField& conn, const VectorField& v,
                                            PointView p, int order) {
    const int d = conn.dim();
    auto vj = v.jets(p, order + 1);
    auto g = conn.christoffel_jets(p, order);
    Grid2<Jet> out(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            Jet val = vj[k].derivative(i);
            for (int l = 0; l < d; ++l) val += (g(k, i, l) * vj[l]).truncated(order);
            out(i, k) = val;
        }
    return out;
}

Grid2<double> covariant_derivative_vector(const ConnectionField& conn, const VectorField& v,
                                          PointView p) {
    auto jets = covariant_derivative_vector_jets(conn, v, p, 0);
    Grid2<double> out(conn.dim());
    auto it = out.begin();
    for (const auto& j : jets) *it++ = j.value();
    return out;
}

Grid4<double> e_component_from(const Mat& ric, const Mat& rho, const Mat& omega) {
    const int d = ric.dim();
    const double c = 1.0 / (d + 2.0); // 1 / (2(n+1)) with d = 2n
    Grid4<double> out(d);
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    double v = 2.0 * omega(i, j) * rho(l, k) - omega(j, k) * rho(l, i) +
                               omega(i, k) * rho(l, j);
                    if (l == i) v -= ric(j, k);
                    if (l == j) v += ric(i, k);
                    out(l, k, i, j) = c * v;
                }
    return out;
}

Grid4<double> e_component(const ConnectionField& conn, const TwoFormField& omega, PointView p) {
    const Mat ric = ricci(conn, p);
    const Mat om = omega.values(p);
    const Mat rho = matmul(invert(om), ric);
    return e_component_from(ric, rho, om);
}

Grid4<double> w_component(const ConnectionField& conn, const TwoFormField& omega, PointView p) {
    const int d = conn.dim();
    Grid4<double> r = curvature(conn, p);
    Grid4<double> e = e_component(conn, omega, p);
    Grid4<double> out(d);
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) out(l, k, i, j) = r(l, k, i, j) - e(l, k, i, j);
    return out;
}

RicciTypeVerdict is_ricci_type(const ConnectionField& conn, const TwoFormField& omega,
                               const std::vector<Vec>& samples, double tol) {
    RicciTypeVerdict v;
    for (const auto& p : samples)
        v.max_w = std::max(v.max_w, max_abs_grid(w_component(conn, omega, p)));
    v.pass = v.max_w <= tol;
    return v;
}

MatrixField ricci_field(ConnectionField conn) {
    const int d = conn.dim();
    return MatrixField(d, conn.depth() + 1, [conn = std::move(conn)](PointView p, int order) {
        return ricci_jets(conn, p, order);
    });
}

MatrixField endo_field(TwoFormField omega, MatrixField bilinear) {
    const int d = omega.dim();
    const int depth = std::max(omega.depth(), bilinear.depth());
    return MatrixField(d, depth,
                       [omega = std::move(omega), bilinear = std::move(bilinear)](
                           PointView p, int order) {
                           auto pi = omega_inverse_jets(omega, p, order);
                           return endo_from_bilinear_jets(pi, bilinear.jets(p, order));
                       });
}

VectorField trace_lift_vector(ConnectionField conn, TwoFormField omega, MatrixField sigma,
                              double scale) {
    const int d = conn.dim();
    const int depth = sigma.depth() + 1;
    return VectorField(
        d, depth,
        [conn = std::move(conn), omega = std::move(omega), sigma = std::move(sigma), scale, d](
            PointView p, int order) {
            auto ns = covariant_derivative_endo_jets(conn, sigma, p, order);
            // U_flat(X_i) = scale * sum_k (nabla_k sigma)^k_i
            std::vector<Jet> uflat;
            uflat.reserve(d);
            for (int i = 0; i < d; ++i) {
                Jet v = ns(0, 0, i);
                for (int k = 1; k < d; ++k) v += ns(k, k, i);
                uflat.push_back(v * scale);
            }
            // U = -pi . U_flat so that omega(U, .) = U_flat
            auto pi = omega_inverse_jets(omega, p, order);
            std::vector<Jet> u;
            u.reserve(d);
            for (int i = 0; i < d; ++i) {
                Jet v = pi(i, 0) * uflat[0];
                for (int j = 1; j < d; ++j) v += pi(i, j) * uflat[j];
                u.push_back(-v);
            }
            return u;
        });
}

MatrixField nabla_vector_matrix(ConnectionField conn, VectorField v) {
    const int d = conn.dim();
    const int depth = std::max(conn.depth(), v.depth()) + 1;
    return MatrixField(d, depth,
                       [conn = std::move(conn), v = std::move(v)](PointView p, int order) {
                           return covariant_derivative_vector_jets(conn, v, p, order);
                       });
}

Grid4<double> curvature_fd(const ConnectionField& conn, PointView p, double h) {
    const int d = conn.dim();
    const Grid3<double> g = conn.christoffels(p);
    // dGamma(r, k, i, j) = d_r Gamma^k_{ij} by central differences
    Grid4<double> dg(d);
    Vec q(p.begin(), p.end());
    for (int r = 0; r < d; ++r) {
        q[r] = p[r] + h;
        const Grid3<double> plus = conn.christoffels(q);
        q[r] = p[r] - h;
        const Grid3<double> minus = conn.christoffels(q);
        q[r] = p[r];
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    dg(r, k, i, j) = (plus(k, i, j) - minus(k, i, j)) / (2.0 * h);
    }
    Grid4<double> out(d);
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    double v = dg(i, l, j, k) - dg(j, l, i, k);
                    for (int m = 0; m < d; ++m)
                        v += g(l, i, m) * g(m, j, k) - g(l, j, m) * g(m, i, k);
                    out(l, k, i, j) = v;
                }
    return out;
}

Mat ricci_fd(const ConnectionField& conn, PointView p, double h) {
    return ricci_trace(curvature_fd(conn, p, h));
}

Mat lie_derivative_two_form(const VectorField& v, const TwoFormField& omega, PointView p) {
    const int d = omega.dim();
    auto vj = v.jets(p, 1);
    auto oj = omega.jets(p, 1);
    Mat out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double val = 0.0;
            for (int r = 0; r < d; ++r) {
                val += vj[r].value() * oj(i, j).derivative(r).value();
                val += oj(r, j).value() * vj[r].derivative(i).value();
                val += oj(i, r).value() * vj[r].derivative(j).value();
            }
            out(i, j) = val;
        }
    return out;
}

Grid3<double> lie_derivative_connection(const VectorField& v, const ConnectionField& conn,
                                        PointView p) {
    const int d = conn.dim();
    auto vj = v.jets(p, 2);
    auto g = conn.christoffel_jets(p, 1);
    Grid3<double> out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int s = 0; s < d; ++s) {
                double val = vj[s].derivative(i).derivative(j).value();
                for (int r = 0; r < d; ++r) {
                    val += vj[r].value() * g(s, i, j).derivative(r).value();
                    val -= g(r, i, j).value() * vj[s].derivative(r).value();
                    val += g(s, r, j).value() * vj[r].derivative(i).value();
                    val += g(s, i, r).value() * vj[r].derivative(j).value();
                }
                out(i, j, s) = val;
            }
    return out;
}

} // namespace scl
