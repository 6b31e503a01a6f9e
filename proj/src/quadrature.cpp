#include "pulseion/quadrature.hpp"

#include <cmath>
#include <utility>

#include "pulseion/errors.hpp"

namespace pulseion {
namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kNodes[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601700, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double kWeights[15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

std::complex<double> panel(const std::function<std::complex<double>(double)>& f,
                           double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < 15; ++i) acc += kWeights[i] * f(mid + half * kNodes[i]);
    return half * acc;
}

std::complex<double> refine(const std::function<std::complex<double>(double)>& f,
                            double a, double b, std::complex<double> whole,
                            double tol, int depth, int& budget) {
    if (--budget < 0)
        throw QuadratureFailure("integrate_adaptive: panel budget exhausted");
    const double mid = 0.5 * (a + b);
    std::complex<double> left = panel(f, a, mid);
    std::complex<double> right = panel(f, mid, b);
    if (std::abs(left + right - whole) <= tol || depth > 60)
        return left + right;
    return refine(f, a, mid, left, 0.5 * tol, depth + 1, budget) +
           refine(f, mid, b, right, 0.5 * tol, depth + 1, budget);
}

}  // namespace

std::complex<double> gauss15(const std::function<std::complex<double>(double)>& f,
                             double a, double b) {
    return panel(f, a, b);
}

std::complex<double> integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol, int max_panels) {
    if (!(b > a)) return 0.0;
    int budget = max_panels;
    return refine(f, a, b, panel(f, a, b), abs_tol, 0, budget);
}

}  // namespace pulseion
