#pragma once

#include <complex>
#include <functional>

namespace pulseion {

// Adaptive bisection quadrature for complex-valued integrands: a fixed
// 15-point Gauss-Legendre rule per panel, panels split until the two-half
// refinement changes the panel value by less than its share of abs_tol.
// max_panels bounds the total subdivision budget; exceeding it throws
// QuadratureFailure.
std::complex<double> integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol,
                                        int max_panels = 20000);

// Single fixed-rule evaluation (used for reference comparisons in tests).
std::complex<double> gauss15(const std::function<std::complex<double>(double)>& f,
                             double a, double b);

}  // namespace pulseion
