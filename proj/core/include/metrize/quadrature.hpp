#pragma once

#include <functional>

#include "metrize/errors.hpp"

namespace metrize {

/// Adaptive Simpson quadrature of f over [a, b] with absolute error target
/// `tol`. Antisymmetric in swapped bounds by construction. Throws
/// QuadratureFailure when the subdivision depth exceeds 60.
double quadrature(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace metrize
