#include "pulseion/source_terms.hpp"

#include <algorithm>
#include <cmath>

#include "pulseion/quadrature.hpp"

namespace pulseion {

SourceSpec SourceSpec::bump(double radius) {
    SourceSpec s;
    s.kind = Kind::CompactSupport;
    s.support_radius = radius;
    s.profile = [radius](double x) {
        double u = x / radius;
        double d = 1.0 - u * u;
        return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
    };
    return s;
}

SourceSpec SourceSpec::parse(const std::string& text) {
    if (text == "bound") return bound_state();
    const std::string prefix = "bump:radius=";
    if (text.rfind(prefix, 0) == 0) {
        double r = std::stod(text.substr(prefix.size()));
        if (!(r > 0.0)) throw DegenerateInput("source: bump radius must be positive");
        return bump(r);
    }
    throw DegenerateInput("source: expected 'bound' or 'bump:radius=R', got '" + text + "'");
}

cplx g_compact_quadrature_segment(const std::function<cplx(double)>& f, double a, double b,
                                  cplx kappa_value, double tol) {
    if (!(b > a)) return 0.0;
    double seg = b - a;
    double im = std::abs(kappa_value.imag());
    if (im > 0.0) seg = std::min(seg, 3.141592653589793 / im);
    int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / seg)));
    double tol_piece = tol / pieces;
    cplx acc = 0.0;
    for (int p = 0; p < pieces; ++p)
        acc += integrate_adaptive(f, a + (b - a) * p / pieces, a + (b - a) * (p + 1) / pieces,
                                  tol_piece);
    return acc;
}

// Splits [-R, R] at the |x| kink and caps panel width at the oscillation
// wavelength of exp(-kappa|x|), then integrates adaptively.
cplx g_compact_quadrature(const SourceSpec& source, cplx kappa_value) {
    const double R = source.support_radius;
    auto integrand = [&](double x) -> cplx {
        return std::exp(-kappa_value * std::abs(x)) * source.profile(x);
    };
    cplx acc = g_compact_quadrature_segment(integrand, -R, 0.0, kappa_value,
                                            source.quad_tol / 2) +
               g_compact_quadrature_segment(integrand, 0.0, R, kappa_value,
                                            source.quad_tol / 2);
    return cplx(0.0, 0.5) * acc;
}

}  // namespace pulseion
