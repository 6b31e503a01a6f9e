#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pulseion/core.hpp"
#include "pulseion/errors.hpp"
#include "pulseion/precision.hpp"

namespace pulseion {

// Initial-condition descriptor. BoundState is psi0(x) = exp(-|x|) (unit L2
// norm, eigenstate of the static well); CompactSupport carries an arbitrary
// real profile vanishing outside [-support_radius, support_radius].
struct SourceSpec {
    enum class Kind { BoundState, CompactSupport };
    Kind kind = Kind::BoundState;
    std::function<double(double)> profile;  // CompactSupport only
    double support_radius = 1.0;            // CompactSupport only
    double quad_tol = 1e-12;

    static SourceSpec bound_state() { return {}; }
    static SourceSpec bump(double radius);
    // Parses "bound" or "bump:radius=R".
    static SourceSpec parse(const std::string& text);
};

// Double-precision quadrature for g with a general profile; declared here,
// defined in source_terms.cpp (the multiprecision path upcasts this value).
cplx g_compact_quadrature(const SourceSpec& source, cplx kappa_value);

// Adaptive integral of f over [a, b] with the panel size capped at the
// oscillation wavelength pi/|Im kappa|.
cplx g_compact_quadrature_segment(const std::function<cplx(double)>& f, double a, double b,
                                  cplx kappa_value, double tol);

// g_{m,n}(sigma) = (i/2) * Integral exp(-kappa |x'|) psi0(x') dx'.
// For BoundState the integral is 2/(kappa+1), so g = i/(kappa+1).
template <class C = cplx>
C g(const SourceSpec& source, const PulseParams& params, double sigma, ModeIndex idx) {
    C k = kappa<C>(params, sigma, idx);
    if (source.kind == SourceSpec::Kind::BoundState)
        return C(0, 1) / (k + C(1));
    cplx kd(to_double(k.real()), to_double(k.imag()));
    cplx v = g_compact_quadrature(source, kd);
    return C(scalar_t<C>(v.real()), scalar_t<C>(v.imag()));
}

template <class C = cplx>
std::vector<C> g_row(const SourceSpec& source, const PulseParams& params, double sigma,
                     int m, int n_lo, int n_hi) {
    std::vector<C> out;
    out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = n_lo; n <= n_hi; ++n) {
        try {
            out.push_back(g<C>(source, params, sigma, {m, n}));
        } catch (const QuadratureFailure& e) {
            throw QuadratureFailure(std::string(e.what()) + " at m=" + std::to_string(m) +
                                    ", n=" + std::to_string(n));
        }
    }
    return out;
}

}  // namespace pulseion
