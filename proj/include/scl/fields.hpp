#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "scl/expression.hpp"
#include "scl/jet.hpp"
#include "scl/tensors.hpp"

namespace scl {

using PointView = std::span<const double>;

/// Chart of even dimension >= 4. `allow_small` relaxes to >= 2 for smoke
/// tests; off by default.
struct Chart {
    int dim = 0;

    static Chart make(int dim, bool allow_small = false) {
        if (dim % 2 != 0) throw std::invalid_argument("chart dimension must be even");
        if (dim < (allow_small ? 2 : 4))
            throw std::invalid_argument("chart dimension must be at least 4");
        return Chart{dim};
    }
    int n() const { return dim / 2; }
};

/// One-form with expression components lambda_i, i = 1..dim.
class OneFormField {
public:
    OneFormField() = default;
    OneFormField(int dim, std::vector<Expression> components);

    int dim() const { return dim_; }
    const Expression& component(int i) const { return comps_[i]; }
    std::vector<Jet> jets(PointView p, int order) const;
    Vec values(PointView p) const;

private:
    int dim_ = 0;
    std::vector<Expression> comps_;
};

/// Scalar field evaluated through the jet tower: jets(p, K) internally
/// requests jets of order K + depth from its base expressions.
class ScalarField {
public:
    using Fn = std::function<Jet(PointView, int)>;
    ScalarField() = default;
    ScalarField(int dim, int depth, Fn fn) : dim_(dim), depth_(depth), fn_(std::move(fn)) {}

    static ScalarField from_expression(Expression e);
    static ScalarField zero(int dim);

    int dim() const { return dim_; }
    int depth() const { return depth_; }
    Jet jets(PointView p, int order) const { return fn_(p, order); }
    double value(PointView p) const { return fn_(p, 0).value(); }

private:
    int dim_ = 0;
    int depth_ = 0;
    Fn fn_;
};

class VectorField {
public:
    using Fn = std::function<std::vector<Jet>(PointView, int)>;
    VectorField() = default;
    VectorField(int dim, int depth, Fn fn) : dim_(dim), depth_(depth), fn_(std::move(fn)) {}

    static VectorField from_expressions(int dim, std::vector<Expression> comps);
    static VectorField zero(int dim);

    int dim() const { return dim_; }
    int depth() const { return depth_; }
    std::vector<Jet> jets(PointView p, int order) const { return fn_(p, order); }
    Vec values(PointView p) const;

private:
    int dim_ = 0;
    int depth_ = 0;
    Fn fn_;
};

/// Matrix-valued field; used both for bilinear forms b_{ij} and for
/// endomorphisms A^k_j (the index roles are the caller's contract).
class MatrixField {
public:
    using Fn = std::function<Grid2<Jet>(PointView, int)>;
    MatrixField() = default;
    MatrixField(int dim, int depth, Fn fn) : dim_(dim), depth_(depth), fn_(std::move(fn)) {}

    static MatrixField from_expressions(int dim, Grid2<Expression> entries);
    static MatrixField zero(int dim);
    MatrixField scaled(double factor) const;

    int dim() const { return dim_; }
    int depth() const { return depth_; }
    Grid2<Jet> jets(PointView p, int order) const { return fn_(p, order); }
    Mat values(PointView p) const;

private:
    int dim_ = 0;
    int depth_ = 0;
    Fn fn_;
};

/// Antisymmetric 2-form field. Component evaluators must return an exactly
/// antisymmetric matrix of jets.
class TwoFormField {
public:
    using Fn = std::function<Grid2<Jet>(PointView, int)>;
    TwoFormField() = default;
    TwoFormField(int dim, int depth, Fn fn) : dim_(dim), depth_(depth), fn_(std::move(fn)) {}

    /// Built from the strict upper triangle; the lower triangle and diagonal
    /// are filled by antisymmetry.
    static TwoFormField from_upper_triangle(int dim, std::vector<Expression> upper);
    /// The exact form d(lambda), components derived by differentiation.
    static TwoFormField exact(OneFormField lambda);

    int dim() const { return dim_; }
    int depth() const { return depth_; }
    Grid2<Jet> jets(PointView p, int order) const { return fn_(p, order); }
    Mat values(PointView p) const;

private:
    int dim_ = 0;
    int depth_ = 0;
    Fn fn_;
};

/// Torsion-free connection as a Christoffel evaluator. Expression-backed
/// connections are symmetric by storage; computed ones (e.g. on the induced
/// space) are symmetric by construction and checked numerically.
class ConnectionField {
public:
    using Fn = std::function<Grid3<Jet>(PointView, int)>;
    ConnectionField() = default;
    ConnectionField(int dim, int depth, Fn fn) : dim_(dim), depth_(depth), fn_(std::move(fn)) {}

    /// Symmetric storage: entries for i <= j only; Gamma^k_{ji} = Gamma^k_{ij}.
    static ConnectionField from_expressions(int dim, Grid3<Expression> lower);
    static ConnectionField zero(int dim);
    /// Gamma_{kij} = third partials of the potential, raised through the
    /// form's inverse; fully symmetric lower tensor by construction.
    static ConnectionField from_potential(Expression potential, TwoFormField omega);

    int dim() const { return dim_; }
    int depth() const { return depth_; }
    Grid3<Jet> christoffel_jets(PointView p, int order) const { return fn_(p, order); }
    Grid3<double> christoffels(PointView p) const;

private:
    int dim_ = 0;
    int depth_ = 0;
    Fn fn_;
};

/// Exact symplectic chart data: lambda, omega = d(lambda), and a symplectic
/// connection for it.
struct ExactSymplecticSpec {
    Chart chart;
    OneFormField lambda;
    TwoFormField omega;
    ConnectionField connection;

    int n() const { return chart.dim / 2; }
};

/// Deterministic sample points: coordinates uniform in [-1, 1]; when
/// 0 <= s_index < dim that coordinate is drawn from [-0.5, 0.5] instead.
std::vector<Vec> sample_points(int dim, int count, uint64_t seed, int s_index = -1);

} // namespace scl
