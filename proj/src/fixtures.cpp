#include "scl/fixtures.hpp"

#include <stdexcept>

namespace scl {

namespace {

OneFormField standard_lambda() {
    std::vector<Expression> comps;
    comps.push_back(Expression::parse("x3", 4));
    comps.push_back(Expression::parse("x4", 4));
    comps.push_back(Expression::constant(0.0, 4));
    comps.push_back(Expression::constant(0.0, 4));
    return OneFormField(4, std::move(comps));
}

} // namespace

ExactSymplecticSpec flat4() {
    ExactSymplecticSpec spec;
    spec.chart = Chart::make(4);
    spec.lambda = standard_lambda();
    spec.omega = TwoFormField::exact(spec.lambda);
    spec.connection = ConnectionField::zero(4);
    return spec;
}

Expression quartic4_potential() {
    return Expression::parse("x1^4/24 + x1^2*x2^2/8 + x1*x2*x3*x4", 4);
}

ExactSymplecticSpec quartic4() {
    ExactSymplecticSpec spec;
    spec.chart = Chart::make(4);
    spec.lambda = standard_lambda();
    spec.omega = TwoFormField::exact(spec.lambda);
    spec.connection = ConnectionField::from_potential(quartic4_potential(), spec.omega);
    return spec;
}

ExactSymplecticSpec fixture_by_name(const std::string& name) {
    if (name == "flat4") return flat4();
    if (name == "quartic4") return quartic4();
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

} // namespace scl
