#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "pulseion/errors.hpp"
#include "pulseion/precision.hpp"

namespace pulseion {

// Lattice coordinate of the Laplace-space mode p = i*sigma + m*lambda + i*n*omega.
struct ModeIndex {
    int m = 0;
    int n = 0;
    friend bool operator==(ModeIndex, ModeIndex) = default;
    friend auto operator<=>(ModeIndex, ModeIndex) = default;
};

struct ModeIndexHash {
    std::size_t operator()(ModeIndex idx) const {
        return std::hash<std::int64_t>{}((std::int64_t(idx.m) << 32) ^ std::uint32_t(idx.n));
    }
};

struct PulseParams {
    double lambda = 1.0;
    double omega = 3.0;
    double alpha = 1.0;
    double sigma0 = 1.0;

    PulseParams() = default;
    PulseParams(double lam, double om, double al) : lambda(lam), omega(om), alpha(al) {
        sigma0 = base_sigma(om);
    }

    // sigma0 = 1 - floor(1/omega)*omega: lowers the base point into [0, omega)
    // so the resonant radicand sigma0 + n0*omega equals 1. For omega > 1 (and
    // omega = 0) this is just 1.
    static double base_sigma(double om) {
        if (om <= 0.0 || om > 1.0) return 1.0;
        return 1.0 - std::floor(1.0 / om) * om;
    }

    // Column n0 whose mode (0, n0) carries the kappa = 1 resonance.
    int resonant_n() const {
        if (omega <= 0.0 || omega > 1.0) return 0;
        return static_cast<int>(std::floor(1.0 / omega));
    }

    bool experimental_band() const { return omega > 0.0 && omega <= 1.0; }
};

struct TruncationSpec {
    int depth = 8;          // minimum path-sum depth before the stop test applies
    double tol = 1e-10;     // target absolute error on the returned value
    int max_depth = 400;
};

// kappa_{m,n}(sigma) = sqrt(sigma + n*omega - i*m*lambda), principal branch.
// For m >= 1 the radicand sits in the lower half-plane and the root falls in
// the closed fourth quadrant on its own. On the negative real axis (m = 0,
// sigma + n*omega < 0) we take the limit from below, -i*sqrt|.|, consistent
// with that quadrant.
template <class C = cplx>
C kappa(const PulseParams& params, double sigma, ModeIndex idx) {
    using R = scalar_t<C>;
    R re = R(sigma) + R(idx.n) * R(params.omega);
    R im = -R(idx.m) * R(params.lambda);
    C s(re, im);
    if (re == 0 && im == 0)
        throw ZeroArgument("kappa: zero radicand at m=" + std::to_string(idx.m) +
                           ", n=" + std::to_string(idx.n));
    using std::sqrt;
    C k = sqrt(s);
    if (k.real() < 0) k = -k;
    if (k.real() == 0 && k.imag() > 0) k = -k;
    return k;
}

// B_{m,n} = 1/(kappa_{m,n}(sigma0) - 1). The resonant mode (0, n0) is the one
// place kappa equals 1 and is excluded by contract.
template <class C = cplx>
C bcoef(const PulseParams& params, ModeIndex idx) {
    if (idx.m == 0 && idx.n == params.resonant_n())
        throw SingularCoefficient("bcoef: resonant mode (0," + std::to_string(idx.n) + ")");
    C k = kappa<C>(params, params.sigma0, idx);
    if (k == C(1))
        throw SingularCoefficient("bcoef: kappa exactly 1 at m=" + std::to_string(idx.m) +
                                  ", n=" + std::to_string(idx.n));
    return C(1) / (k - C(1));
}

}  // namespace pulseion
