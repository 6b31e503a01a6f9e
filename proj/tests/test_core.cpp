// Spectral primitives: the branch-corrected mode root kappa_{m,n}, the
// resolvent coefficient B = 1/(kappa - 1), parameter bookkeeping (sigma0,
// resonant column), and the cancellation-driven precision ladder.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>

#include "pulseion/core.hpp"
#include "pulseion/errors.hpp"
#include "pulseion/precision.hpp"

using namespace pulseion;

static double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TEST_CASE("kappa: trivial real radicands") {
    PulseParams p(1.0, 3.0, 1.0);
    CHECK(kappa<cplx>(p, 1.0, {0, 0}) == cplx(1.0, 0.0));

    // sigma + n*omega = 1 + 3 = 4, lambda term absent at m = 1 only when
    // lambda = 0; the constructor allows that for spectral bookkeeping.
    PulseParams frozen(0.0, 3.0, 1.0);
    CHECK(kappa<cplx>(frozen, 1.0, {1, 1}) == cplx(2.0, 0.0));
}

TEST_CASE("kappa: principal root of 1 - 2i sits in the fourth quadrant") {
    PulseParams p(2.0, 3.0, 1.0);
    cplx k = kappa<cplx>(p, 1.0, {1, 0});
    CHECK(k.real() == doctest::Approx(1.272019649514069).epsilon(1e-14));
    CHECK(k.imag() == doctest::Approx(-0.786151377757423).epsilon(1e-14));
    // squaring must recover the radicand exactly to rounding
    CHECK(rel_diff(k * k, cplx(1.0, -2.0)) < 1e-15);
}

TEST_CASE("kappa: negative real radicand takes the -i sqrt(|s|) branch") {
    // sigma + n*omega = 1 - 3 = -2 on the m = 0 boundary row
    PulseParams p(1.0, 3.0, 1.0);
    cplx k = kappa<cplx>(p, 1.0, {0, -1});
    CHECK(k.real() == doctest::Approx(0.0));
    CHECK(k.imag() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("kappa: exactly zero radicand is rejected") {
    // omega = 1 puts sigma0 at 0, so mode (0,0) has radicand 0
    PulseParams p(1.0, 1.0, 1.0);
    CHECK(p.sigma0 == 0.0);
    CHECK_THROWS_AS(kappa<cplx>(p, p.sigma0, {0, 0}), ZeroArgument);
}

TEST_CASE("kappa: fourth-quadrant branch and exact square on random draws") {
    std::mt19937 rng(20240915);
    std::uniform_real_distribution<double> lam(0.1, 5.0), om(1.1, 8.0);
    std::uniform_int_distribution<int> mdist(1, 8), ndist(-8, 8);
    for (int trial = 0; trial < 500; ++trial) {
        PulseParams p(lam(rng), om(rng), 1.0);
        ModeIndex idx{mdist(rng), ndist(rng)};
        cplx k = kappa<cplx>(p, p.sigma0, idx);
        CHECK(k.real() >= 0.0);
        CHECK(k.imag() <= 0.0);
        cplx radicand(p.sigma0 + idx.n * p.omega, -idx.m * p.lambda);
        CHECK(rel_diff(k * k, radicand) < 1e-14);
    }
}

TEST_CASE("bcoef: resonant mode is structurally singular") {
    PulseParams p(1.0, 3.0, 1.0);  // omega > 1, resonant column n0 = 0
    CHECK(p.resonant_n() == 0);
    CHECK_THROWS_AS(bcoef<cplx>(p, {0, 0}), SingularCoefficient);

    // sub-harmonic drive: resonance moves to column n0 = floor(1/omega)
    PulseParams sub(1.0, 0.7, 1.0);
    CHECK(sub.resonant_n() == 1);
    CHECK(sub.sigma0 == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(bcoef<cplx>(sub, {0, 1}), SingularCoefficient);
    CHECK_NOTHROW(bcoef<cplx>(sub, {0, 2}));
}

TEST_CASE("bcoef: kappa = 1 away from the resonant index is still refused") {
    // omega = 0 collapses every column, so (0, n) has kappa = 1 for all n
    PulseParams p(2.0, 0.0, 1.0);
    CHECK_THROWS_AS(bcoef<cplx>(p, {0, 2}), SingularCoefficient);
}

TEST_CASE("bcoef: explicit values") {
    PulseParams frozen(0.0, 3.0, 1.0);
    CHECK(rel_diff(bcoef<cplx>(frozen, {0, 1}), cplx(1.0, 0.0)) < 1e-15);

    PulseParams p(2.0, 0.0, 1.0);
    cplx b = bcoef<cplx>(p, {1, 0});
    CHECK(b.real() == doctest::Approx(0.39308).epsilon(1e-4));
    CHECK(b.imag() == doctest::Approx(1.13601).epsilon(1e-4));
    // definitional identity: B * (kappa - 1) = 1
    cplx k = kappa<cplx>(p, 1.0, {1, 0});
    CHECK(rel_diff(b * (k - cplx(1.0)), cplx(1.0)) < 1e-14);
}

TEST_CASE("bcoef: magnitude decay bound") {
    // |B| <= 2 / sqrt(max(|n| omega, |m| lambda)) once that max reaches 4
    PulseParams p(2.0, 3.0, 1.0);
    for (int m = 1; m <= 40; ++m)
        for (int n : {-12, -5, 0, 5, 12}) {
            double scale = std::max(std::abs(n) * p.omega, m * p.lambda);
            if (scale < 4.0) continue;
            CHECK(std::abs(bcoef<cplx>(p, {m, n})) <= 2.0 / std::sqrt(scale));
        }
}

TEST_CASE("PulseParams: sigma0 and the resonant column") {
    CHECK(PulseParams(1.0, 3.0, 1.0).sigma0 == 1.0);
    CHECK(PulseParams(1.0, 0.0, 1.0).sigma0 == 1.0);
    CHECK(PulseParams(1.0, 0.3, 1.0).sigma0 == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(PulseParams(1.0, 0.3, 1.0).resonant_n() == 3);
    // sigma0 + n0*omega always reconstructs the bound-state energy scale 1
    for (double om : {0.15, 0.31, 0.49, 0.77, 0.99, 1.3, 2.0, 6.283}) {
        PulseParams p(1.0, om, 1.0);
        CHECK(p.sigma0 + p.resonant_n() * om == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.sigma0 >= 0.0);
        CHECK(p.sigma0 < std::max(om, 1.0 + 1e-12));
    }
    CHECK(PulseParams(1.0, 0.5, 1.0).experimental_band());
    CHECK_FALSE(PulseParams(1.0, 1.5, 1.0).experimental_band());
    CHECK_FALSE(PulseParams(1.0, 0.0, 1.0).experimental_band());
}

TEST_CASE("precision menu: doubling orbit of 15 capped at 240") {
    CHECK(menu_digits(1) == 15);
    CHECK(menu_digits(15) == 15);
    CHECK(menu_digits(16) == 30);
    CHECK(menu_digits(45) == 60);
    CHECK(menu_digits(120) == 120);
    CHECK(menu_digits(500) == 240);
    CHECK(digits_of<cplx>() == 15);
    CHECK(digits_of<mp60>() == 60);
    CHECK(digits_of<mp240>() == 240);
}

TEST_CASE("escalate_if_cancelled: mild cancellation is accepted") {
    PrecisionPolicy policy;
    CHECK(escalate_if_cancelled(1.0, 10.0, 15, policy) == EscalateDecision::accept);
}

TEST_CASE("escalate_if_cancelled: catastrophic cancellation triggers a rerun") {
    PrecisionPolicy policy;
    // ratio 1e18 against threshold 1e12 at base precision
    CHECK(escalate_if_cancelled(1e-15, 1e3, 15, policy) == EscalateDecision::rerun);
    CHECK(escalated_digits(15, policy) == 30);
    CHECK(escalated_digits(30, policy) == 60);
    CHECK(escalated_digits(60, policy) == 120);
    CHECK(escalated_digits(120, policy) == 120);  // default cap
}

TEST_CASE("escalate_if_cancelled: allowance scales with working digits") {
    PrecisionPolicy policy;
    // 18 digits lost: fatal at 15 working digits, comfortable at 60
    CHECK(escalate_if_cancelled(1e-18, 1.0, 15, policy) == EscalateDecision::rerun);
    CHECK(escalate_if_cancelled(1e-18, 1.0, 60, policy) == EscalateDecision::accept);
}

TEST_CASE("escalate_if_cancelled: cap reached reports exhaustion") {
    PrecisionPolicy policy;
    CHECK(escalate_if_cancelled(1e-200, 1e200, 120, policy) == EscalateDecision::exhausted);
    PrecisionPolicy tall = policy;
    tall.max_digits = 240;
    CHECK(escalate_if_cancelled(1e-200, 1e200, 120, tall) == EscalateDecision::rerun);
    CHECK(escalated_digits(120, tall) == 240);
}

TEST_CASE("default_policy: environment raises the digit cap") {
    unsetenv("PULSEION_DIGITS");
    CHECK(default_policy().max_digits == 120);
    setenv("PULSEION_DIGITS", "240", 1);
    CHECK(default_policy().max_digits == 240);
    setenv("PULSEION_DIGITS", "9000", 1);
    CHECK(default_policy().max_digits == 240);  // clamped to the menu
    unsetenv("PULSEION_DIGITS");
}

namespace {
struct DispatchProbe {
    template <class C>
    int operator()(int digits) const {
        CHECK(digits_of<C>() == digits);
        return digits;
    }
};
}  // namespace

TEST_CASE("dispatch_precision: runs the functor at the matching menu type") {
    using Probe = DispatchProbe;
    CHECK(dispatch_precision(15, Probe{}) == 15);
    CHECK(dispatch_precision(22, Probe{}) == 30);
    CHECK(dispatch_precision(240, Probe{}) == 240);
}

TEST_CASE("multiprecision kappa agrees with double kappa") {
    PulseParams p(0.7, 2.3, 1.0);
    for (int m = 0; m <= 4; ++m)
        for (int n = -3; n <= 3; ++n) {
            if (m == 0 && p.sigma0 + n * p.omega == 0.0) continue;
            cplx kd = kappa<cplx>(p, p.sigma0, {m, n});
            mp60 kq = kappa<mp60>(p, p.sigma0, {m, n});
            cplx back(to_double(kq.real()), to_double(kq.imag()));
            CHECK(rel_diff(kd, back) < 1e-14);
        }
}
