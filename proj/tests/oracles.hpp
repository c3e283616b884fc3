// Independent numerical oracles for the test suites. Everything here avoids
// the library's jet differentiation path: plain finite differences over
// scalar evaluations, brute-force polynomial algebra, and RK4 parallel
// transport for holonomy. Expected values in the tests come from these.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "scl/fields.hpp"
#include "scl/tensors.hpp"

namespace oracle {

using scl::Mat;
using scl::Vec;

// Central finite difference of a scalar callable along coordinate `var`.
template <typename F>
double fd_partial(const F& f, Vec x, int var, double h = 1e-5) {
    x[var] += h;
    const double plus = f(x);
    x[var] -= 2.0 * h;
    const double minus = f(x);
    return (plus - minus) / (2.0 * h);
}

// Higher one-dimensional derivatives from central stencils.
template <typename F>
double fd_derivative_1d(const F& f, double x, int order, double h = 1e-3) {
    switch (order) {
        case 0:
            return f(x);
        case 1:
            return (f(x + h) - f(x - h)) / (2.0 * h);
        case 2:
            return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        case 3:
            return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) /
                   (2.0 * h * h * h);
        default:
            throw std::invalid_argument("fd_derivative_1d supports orders 0..3");
    }
}

// Dense multivariate polynomial over a few variables; exact arithmetic on
// coefficient maps. The brute-force reference for jet identities.
struct Poly {
    // exponent tuple -> coefficient
    std::map<std::array<int, 6>, double> terms;
    int nvars = 0;

    static Poly constant(int nvars, double c) {
        Poly p;
        p.nvars = nvars;
        p.terms[{}] = c;
        return p;
    }
    static Poly var(int nvars, int index) {
        Poly p;
        p.nvars = nvars;
        std::array<int, 6> e{};
        e[index] = 1;
        p.terms[e] = 1.0;
        return p;
    }
    Poly operator+(const Poly& o) const {
        Poly out = *this;
        for (const auto& [e, c] : o.terms) out.terms[e] += c;
        return out;
    }
    Poly operator*(const Poly& o) const {
        Poly out;
        out.nvars = nvars;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                std::array<int, 6> e{};
                for (int v = 0; v < 6; ++v) e[v] = e1[v] + e2[v];
                out.terms[e] += c1 * c2;
            }
        return out;
    }
    Poly scaled(double f) const {
        Poly out = *this;
        for (auto& [e, c] : out.terms) c *= f;
        return out;
    }
    Poly derivative(int var) const {
        Poly out;
        out.nvars = nvars;
        for (const auto& [e, c] : terms) {
            if (e[var] == 0) continue;
            std::array<int, 6> d = e;
            d[var] -= 1;
            out.terms[d] += c * e[var];
        }
        return out;
    }
    double eval(const Vec& x) const {
        double acc = 0.0;
        for (const auto& [e, c] : terms) {
            double t = c;
            for (int v = 0; v < nvars; ++v)
                for (int k = 0; k < e[v]; ++k) t *= x[v];
            acc += t;
        }
        return acc;
    }
    double partial(const Vec& x, const std::vector<int>& alpha) const {
        Poly p = *this;
        for (size_t v = 0; v < alpha.size(); ++v)
            for (int k = 0; k < alpha[v]; ++k) p = p.derivative(static_cast<int>(v));
        return p.eval(x);
    }
    static Poly random(int nvars, int degree, std::mt19937_64& rng) {
        Poly out;
        out.nvars = nvars;
        std::uniform_real_distribution<double> coef(-2.0, 2.0);
        std::function<void(std::array<int, 6>&, int, int)> rec = [&](std::array<int, 6>& e,
                                                                     int var, int left) {
            if (var == nvars) {
                out.terms[e] = coef(rng);
                return;
            }
            for (int k = 0; k <= left; ++k) {
                e[var] = k;
                rec(e, var + 1, left - k);
            }
            e[var] = 0;
        };
        std::array<int, 6> e{};
        rec(e, 0, degree);
        return out;
    }
};

// Curvature assembled from centered finite differences of Christoffel
// values; no jets involved.
inline scl::Grid4<double> fd_curvature(const scl::ConnectionField& conn, const Vec& x,
                                       double h = 2e-5) {
    const int d = conn.dim();
    const auto g = conn.christoffels(x);
    scl::Grid4<double> dg(d);
    Vec q = x;
    for (int r = 0; r < d; ++r) {
        q[r] = x[r] + h;
        const auto plus = conn.christoffels(q);
        q[r] = x[r] - h;
        const auto minus = conn.christoffels(q);
        q[r] = x[r];
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    dg(r, k, i, j) = (plus(k, i, j) - minus(k, i, j)) / (2.0 * h);
    }
    scl::Grid4<double> out(d);
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

inline Mat fd_ricci(const scl::ConnectionField& conn, const Vec& x, double h = 2e-5) {
    const auto r = fd_curvature(conn, x, h);
    const int d = conn.dim();
    Mat out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double v = 0.0;
            for (int l = 0; l < d; ++l) v += r(l, j, i, l);
            out(i, j) = v;
        }
    return out;
}

// Parallel transport of the identity frame around the (i, j) coordinate
// square of side h by one RK4 step per edge; returns (I - T_loop) / h^2,
// which approaches R^l_{kij} as a matrix in (l, k). For constant
// Christoffels the edge transports are matrix exponentials and the loop
// composition reduces to the commutator; the library-independent reference
// for the curvature sign.
inline Mat holonomy_estimate(const scl::ConnectionField& conn, const Vec& x, int i, int j,
                             double h) {
    const int d = conn.dim();
    auto rhs = [&](const Vec& pos, int dir, const Mat& v) {
        const auto g = conn.christoffels(pos);
        Mat out(d);
        for (int l = 0; l < d; ++l)
            for (int c = 0; c < d; ++c) {
                double s = 0.0;
                for (int nu = 0; nu < d; ++nu) s -= g(l, dir, nu) * v(nu, c);
                out(l, c) = s;
            }
        return out;
    };
    auto step = [&](Vec pos, int dir, double len, Mat v) {
        // single RK4 step for V' = -Gamma(pos + tau*dir) V along the edge
        auto at = [&](double tau) {
            Vec q = pos;
            q[dir] += tau;
            return q;
        };
        auto add = [&](const Mat& a, const Mat& b, double f) {
            Mat out = a;
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) out(r, c) += f * b(r, c);
            return out;
        };
        const Mat k1 = rhs(at(0.0), dir, v);
        const Mat k2 = rhs(at(len / 2), dir, add(v, k1, len / 2));
        const Mat k3 = rhs(at(len / 2), dir, add(v, k2, len / 2));
        const Mat k4 = rhs(at(len), dir, add(v, k3, len));
        Mat out = v;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                out(r, c) += len / 6.0 * (k1(r, c) + 2 * k2(r, c) + 2 * k3(r, c) + k4(r, c));
        return out;
    };
    Mat v = scl::identity(d);
    Vec pos = x;
    v = step(pos, i, h, v);
    pos[i] += h;
    v = step(pos, j, h, v);
    pos[j] += h;
    v = step(pos, i, -h, v);
    pos[i] -= h;
    v = step(pos, j, -h, v);
    Mat out(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) out(r, c) = ((r == c ? 1.0 : 0.0) - v(r, c)) / (h * h);
    return out;
}

// Richardson-extrapolated holonomy: 2 A(h/2) - A(h) removes the O(h) term.
inline Mat holonomy_curvature(const scl::ConnectionField& conn, const Vec& x, int i, int j,
                              double h = 1e-2) {
    const Mat a1 = holonomy_estimate(conn, x, i, j, h);
    const Mat a2 = holonomy_estimate(conn, x, i, j, h / 2);
    Mat out(conn.dim());
    for (int r = 0; r < conn.dim(); ++r)
        for (int c = 0; c < conn.dim(); ++c) out(r, c) = 2.0 * a2(r, c) - a1(r, c);
    return out;
}

} // namespace oracle
