#pragma once

#include "scl/fields.hpp"

namespace scl {

/// R^4 with lambda = x3 dx1 + x4 dx2 (standard omega = d lambda) and the
/// flat connection.
ExactSymplecticSpec flat4();

/// Same chart and lambda; Gamma_{kij} = third partials of
/// phi = x1^4/24 + x1^2 x2^2/8 + x1 x2 x3 x4, raised through omega-inverse.
/// Nonconstant Christoffels with generically nonzero Ricci; polynomial, so
/// jets are exact.
ExactSymplecticSpec quartic4();

Expression quartic4_potential();

/// Builds the named fixture ("flat4" or "quartic4").
ExactSymplecticSpec fixture_by_name(const std::string& name);

} // namespace scl
