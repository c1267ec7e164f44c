#pragma once

#include <functional>

namespace degenlab {

/// Adaptive Simpson quadrature of f over [a, b]. Splits until the local
/// Richardson estimate meets rel_tol (with a tiny absolute floor); when
/// max_depth is reached the local value is accepted as is.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-11, int max_depth = 48);

}  // namespace degenlab
