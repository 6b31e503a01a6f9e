#pragma once

#include <cmath>
#include <vector>

#include "pulseion/core.hpp"
#include "pulseion/errors.hpp"
#include "pulseion/precision.hpp"
#include "pulseion/resolvent.hpp"
#include "pulseion/source_terms.hpp"

namespace pulseion {

struct Omega0Series {
    double lambda = 0.0;
    int k_max = 0;
    std::vector<cplx> terms;
    std::vector<cplx> partial_sums;
    double abs_term_total = 0.0;
};

struct SeriesA1Result {
    cplx value;
    double err = 0.0;
    int k_used = 0;
    int digits_used = 15;
    double abs_term_total = 0.0;
    ResultFlag flag = ResultFlag::ok;
};

// h_k = prod_{j=1}^{k} (sqrt(1 - i j lambda) - 1).
template <class C = cplx>
C hk_product(double lambda, int k) {
    if (!(lambda > 0)) throw DegenerateInput("hk_product: requires lambda > 0");
    if (k < 1) throw DegenerateInput("hk_product: requires k >= 1");
    using R = scalar_t<C>;
    using std::sqrt;
    C prod(1);
    for (int j = 1; j <= k; ++j) {
        C s(R(1), -R(j) * R(lambda));
        prod *= sqrt(s) - C(1);
    }
    return prod;
}

namespace detail {

// A1 = sum_k (-1)^(k-1) g_k / h_k with g_k the row-k source value at sigma=1
// (kappa_k = sqrt(1 - i k lambda)). Terms grow to a peak near k ~ 2/lambda
// before factorial damping wins, so the stop test requires being past the
// peak: k >= 8, |term| below tol, and |term| smaller than its predecessor.
template <class C>
SeriesA1Result series_A1_core(double lambda, const SourceSpec& source, double tol,
                              int k_cap = 20000) {
    using R = scalar_t<C>;
    using std::abs;
    PulseParams params(lambda, 0.0, 1.0);
    C hk(1);
    C sum{};
    R att{};
    R prev_mag{};
    SeriesA1Result out;
    bool converged = false;
    for (int k = 1; k <= k_cap; ++k) {
        C s(R(1), -R(k) * R(lambda));
        using std::sqrt;
        hk *= sqrt(s) - C(1);
        C gk = g<C>(source, params, 1.0, {k, 0});
        C term = gk / hk;
        if (k % 2 == 0) term = -term;
        sum += term;
        R mag = abs(term);
        att += mag;
        out.k_used = k;
        if (k >= 8 && to_double(mag) < tol && mag < prev_mag) {
            out.err = to_double(mag);
            converged = true;
            break;
        }
        prev_mag = mag;
    }
    out.value = cplx(to_double(sum.real()), to_double(sum.imag()));
    out.abs_term_total = to_double(att);
    if (!converged) out.flag = ResultFlag::unconverged;
    return out;
}

}  // namespace detail

inline SeriesA1Result series_A1(double lambda, const SourceSpec& source, double tol,
                                const PrecisionPolicy& policy) {
    if (!(lambda > 0)) throw DegenerateInput("series_A1: requires lambda > 0");
    // An exhausted ladder can surface a value that is pure cancellation noise
    // (non-finite after conversion). Downstream emitters promise finite cells,
    // so replace it with 0 and a full-scale error bar; the flag is the verdict.
    auto sanitized = [](SeriesA1Result res) {
        if (!std::isfinite(res.value.real()) || !std::isfinite(res.value.imag())) {
            res.value = cplx(0.0);
            res.err = 1.0;
        }
        if (!std::isfinite(res.abs_term_total)) res.abs_term_total = 1e300;
        if (!std::isfinite(res.err)) res.err = 1.0;
        return res;
    };
    int digits = policy.base_digits;
    for (;;) {
        SeriesA1Result res = dispatch_precision(digits, [&]<class C>(int d) {
            auto r = detail::series_A1_core<C>(lambda, source, tol);
            r.digits_used = d;
            return r;
        });
        if (res.flag == ResultFlag::unconverged) {
            // Double precision can overflow |h_k| past its peak (inf * complex
            // leaves NaN) and then never observe the stop test. The software
            // floats carry a wide exponent, so a genuine non-finite run means
            // "this rung cannot represent the terms", not "the series fails";
            // climb the ladder before giving up.
            const bool finite = std::isfinite(res.value.real()) &&
                                std::isfinite(res.value.imag()) &&
                                std::isfinite(res.abs_term_total);
            if (finite) return res;
            const int cap = menu_digits(std::min(policy.max_digits, kMaxMenuDigits));
            if (res.digits_used >= cap) {
                res.flag = ResultFlag::precision_exhausted;
                return sanitized(res);
            }
            digits = escalated_digits(res.digits_used, policy);
            continue;
        }
        auto decision = escalate_if_cancelled(std::abs(res.value), res.abs_term_total,
                                              res.digits_used, policy);
        if (decision == EscalateDecision::accept) return res;
        if (decision == EscalateDecision::exhausted) {
            res.flag = ResultFlag::precision_exhausted;
            return sanitized(res);
        }
        digits = escalated_digits(res.digits_used, policy);
    }
}

// Term/partial-sum trace at fixed precision, for series diagnostics and tests.
inline Omega0Series omega0_series_trace(double lambda, const SourceSpec& source, int k_max) {
    if (!(lambda > 0)) throw DegenerateInput("omega0_series_trace: requires lambda > 0");
    if (k_max < 1) throw DegenerateInput("omega0_series_trace: requires k_max >= 1");
    PulseParams params(lambda, 0.0, 1.0);
    Omega0Series s;
    s.lambda = lambda;
    s.k_max = k_max;
    cplx hk = 1.0, sum = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        hk *= std::sqrt(cplx(1.0, -k * lambda)) - 1.0;
        cplx term = g<cplx>(source, params, 1.0, {k, 0}) / hk;
        if (k % 2 == 0) term = -term;
        sum += term;
        s.terms.push_back(term);
        s.partial_sums.push_back(sum);
        s.abs_term_total += std::abs(term);
    }
    return s;
}

// omega = 0 survival amplitude: r = 2 g_0 - 2 A1 (alpha = 1 specialization).
inline SurvivalResult survival_omega0(double lambda, const SourceSpec& source, double tol,
                                      const PrecisionPolicy& policy) {
    if (!(lambda > 0)) throw DegenerateInput("survival_omega0: requires lambda > 0");
    PulseParams params(lambda, 0.0, 1.0);
    auto a1 = series_A1(lambda, source, tol, policy);
    cplx g0 = g<cplx>(source, params, 1.0, {0, 0});
    SurvivalResult res;
    res.r = 2.0 * g0 - 2.0 * a1.value;
    res.probability = std::norm(res.r);
    res.err_estimate = 2.0 * a1.err;
    res.depth_used = a1.k_used;
    res.digits_used = a1.digits_used;
    res.abs_term_total = 2.0 * std::abs(g0) + 2.0 * a1.abs_term_total;
    res.flag = a1.flag;
    return res;
}

// Printed small-lambda law for r: 2^(-2/3) (-3i)^(1/6) Gamma(2/3) / sqrt(pi)
// * exp(-3i/(2 lambda)) * lambda^(1/6), principal branch of the sixth root.
inline cplx asymptotic_r(double lambda) {
    if (!(lambda > 0)) throw DegenerateInput("asymptotic_r: requires lambda > 0");
    const double pi = 3.14159265358979323846;
    cplx root6 = std::pow(cplx(0.0, -3.0), 1.0 / 6.0);
    double scale = std::pow(2.0, -2.0 / 3.0) * std::tgamma(2.0 / 3.0) / std::sqrt(pi);
    return scale * root6 * std::exp(cplx(0.0, -1.5 / lambda)) * std::pow(lambda, 1.0 / 6.0);
}

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

// Least-squares line through (log x, log y).
inline SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw DegenerateInput("slope_fit: needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : points) {
        if (!(x > 0) || !(y > 0)) throw DegenerateInput("slope_fit: nonpositive coordinate");
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double n = static_cast<double>(points.size());
    SlopeFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (auto [x, y] : points) {
        double d = std::log(y) - (f.intercept + f.slope * std::log(x));
        ss += d * d;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

}  // namespace pulseion
