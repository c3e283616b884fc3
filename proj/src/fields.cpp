#include "scl/fields.hpp"

#include <random>

#include "scl/geometry.hpp"

namespace scl {

OneFormField::OneFormField(int dim, std::vector<Expression> components)
    : dim_(dim), comps_(std::move(components)) {
    if (static_cast<int>(comps_.size()) != dim_)
        throw std::invalid_argument("one-form component count must equal chart dimension");
}

std::vector<Jet> OneFormField::jets(PointView p, int order) const {
    std::vector<Jet> out;
    out.reserve(dim_);
    for (const auto& e : comps_) out.push_back(e.eval_jet(p.first(dim_), order));
    return out;
}

Vec OneFormField::values(PointView p) const {
    Vec out(dim_);
    for (int i = 0; i < dim_; ++i) out[i] = comps_[i].eval(p.first(dim_));
    return out;
}

ScalarField ScalarField::from_expression(Expression e) {
    const int dim = e.dim();
    return ScalarField(dim, 0, [e = std::move(e), dim](PointView p, int order) {
        return e.eval_jet(p.first(dim), order);
    });
}

ScalarField ScalarField::zero(int dim) {
    return ScalarField(dim, 0, [dim](PointView, int order) {
        return Jet::constant(dim, order, 0.0);
    });
}

VectorField VectorField::from_expressions(int dim, std::vector<Expression> comps) {
    if (static_cast<int>(comps.size()) != dim)
        throw std::invalid_argument("vector component count must equal chart dimension");
    return VectorField(dim, 0, [comps = std::move(comps), dim](PointView p, int order) {
        std::vector<Jet> out;
        out.reserve(dim);
        for (const auto& e : comps) out.push_back(e.eval_jet(p.first(dim), order));
        return out;
    });
}

VectorField VectorField::zero(int dim) {
    return VectorField(dim, 0, [dim](PointView, int order) {
        return std::vector<Jet>(dim, Jet::constant(dim, order, 0.0));
    });
}

Vec VectorField::values(PointView p) const {
    auto j = jets(p, 0);
    Vec out(dim_);
    for (int i = 0; i < dim_; ++i) out[i] = j[i].value();
    return out;
}

MatrixField MatrixField::from_expressions(int dim, Grid2<Expression> entries) {
    return MatrixField(dim, 0, [entries = std::move(entries), dim](PointView p, int order) {
        Grid2<Jet> out(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) out(i, j) = entries(i, j).eval_jet(p.first(dim), order);
        return out;
    });
}

MatrixField MatrixField::zero(int dim) {
    return MatrixField(dim, 0, [dim](PointView, int order) {
        return Grid2<Jet>(dim, Jet::constant(dim, order, 0.0));
    });
}

MatrixField MatrixField::scaled(double factor) const {
    auto base = *this;
    return MatrixField(dim_, depth_, [base, factor](PointView p, int order) {
        Grid2<Jet> out = base.jets(p, order);
        for (auto& j : out) j = j * factor;
        return out;
    });
}

Mat MatrixField::values(PointView p) const {
    auto j = jets(p, 0);
    Mat out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) out(i, k) = j(i, k).value();
    return out;
}

TwoFormField TwoFormField::from_upper_triangle(int dim, std::vector<Expression> upper) {
    const size_t expect = static_cast<size_t>(dim) * (dim - 1) / 2;
    if (upper.size() != expect)
        throw std::invalid_argument("upper-triangle entry count mismatch");
    return TwoFormField(dim, 0, [upper = std::move(upper), dim](PointView p, int order) {
        Grid2<Jet> out(dim, Jet::constant(dim, order, 0.0));
        size_t idx = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j, ++idx) {
                out(i, j) = upper[idx].eval_jet(p.first(dim), order);
                out(j, i) = -out(i, j);
            }
        return out;
    });
}

TwoFormField TwoFormField::exact(OneFormField lambda) {
    const int dim = lambda.dim();
    return TwoFormField(dim, 1, [lambda = std::move(lambda), dim](PointView p, int order) {
        auto lj = lambda.jets(p, order + 1);
        Grid2<Jet> out(dim, Jet::constant(dim, order, 0.0));
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) {
                out(i, j) = lj[j].derivative(i) - lj[i].derivative(j);
                out(j, i) = -out(i, j);
            }
        return out;
    });
}

Mat TwoFormField::values(PointView p) const {
    auto j = jets(p, 0);
    Mat out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) out(i, k) = j(i, k).value();
    return out;
}

ConnectionField ConnectionField::from_expressions(int dim, Grid3<Expression> lower) {
    return ConnectionField(dim, 0, [lower = std::move(lower), dim](PointView p, int order) {
        Grid3<Jet> out(dim);
        for (int k = 0; k < dim; ++k)
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) {
                    out(k, i, j) = lower(k, i, j).eval_jet(p.first(dim), order);
                    if (j != i) out(k, j, i) = out(k, i, j);
                }
        return out;
    });
}

ConnectionField ConnectionField::zero(int dim) {
    return ConnectionField(dim, 0, [dim](PointView, int order) {
        return Grid3<Jet>(dim, Jet::constant(dim, order, 0.0));
    });
}

ConnectionField ConnectionField::from_potential(Expression potential, TwoFormField omega) {
    const int dim = omega.dim();
    if (potential.dim() > dim)
        throw std::invalid_argument("potential uses more variables than the chart has");
    // Three derivative levels below every request; bypasses the per-run cap,
    // which applies to the Christoffel order itself.
    return ConnectionField(
        dim, 0, [potential = std::move(potential), omega = std::move(omega), dim](
                    PointView p, int order) {
            Jet phi = potential.eval_jet_unchecked(p.first(potential.dim()), order + 3);
            if (potential.dim() < dim) {
                std::vector<int> map(potential.dim());
                for (size_t v = 0; v < map.size(); ++v) map[v] = static_cast<int>(v);
                phi = phi.extended(dim, map);
            }
            auto pi = omega_inverse_jets(omega, p, order);
            Grid3<Jet> out(dim, Jet::constant(dim, order, 0.0));
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) {
                    for (int l = 0; l < dim; ++l) {
                        const Jet third = phi.derivative(l).derivative(i).derivative(j);
                        for (int k = 0; k < dim; ++k) out(k, i, j) += pi(k, l) * third;
                    }
                    for (int k = 0; k < dim; ++k) out(k, j, i) = out(k, i, j);
                }
            return out;
        });
}

Grid3<double> ConnectionField::christoffels(PointView p) const {
    auto j = christoffel_jets(p, 0);
    Grid3<double> out(dim_);
    for (int k = 0; k < dim_; ++k)
        for (int i = 0; i < dim_; ++i)
            for (int l = 0; l < dim_; ++l) out(k, i, l) = j(k, i, l).value();
    return out;
}

std::vector<Vec> sample_points(int dim, int count, uint64_t seed, int s_index) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Vec> pts;
    pts.reserve(count);
    for (int c = 0; c < count; ++c) {
        Vec p(dim);
        for (int v = 0; v < dim; ++v) {
            const double u = unit();
            p[v] = (v == s_index) ? (u - 0.5) : (2.0 * u - 1.0);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

} // namespace scl
