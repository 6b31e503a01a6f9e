#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "pulseion/core.hpp"
#include "pulseion/errors.hpp"
#include "pulseion/precision.hpp"
#include "pulseion/source_terms.hpp"

namespace pulseion {

enum class ResultFlag { ok, experimental, unconverged, precision_exhausted };

inline const char* flag_name(ResultFlag f) {
    switch (f) {
        case ResultFlag::ok: return "ok";
        case ResultFlag::experimental: return "experimental";
        case ResultFlag::unconverged: return "unconverged";
        default: return "precision-exhausted";
    }
}

struct PathSumResult {
    cplx value;
    double err = 0.0;
    int depth_used = 0;
    int digits_used = 15;
    double abs_term_total = 0.0;
    ResultFlag flag = ResultFlag::ok;
};

struct SurvivalResult {
    cplx r;
    double probability = 0.0;
    double err_estimate = 0.0;
    int depth_used = 0;
    int digits_used = 15;
    double abs_term_total = 0.0;
    ResultFlag flag = ResultFlag::ok;
};

namespace detail {

template <class C>
struct LayerSum {
    C value{};
    scalar_t<C> err{};
    scalar_t<C> abs_term_total{};
    int depth = 0;
    bool converged = false;
};

// Dynamic program over (layer j, column offset). Layer j holds, for every
// reachable offset d (same parity as j), the sum of sign-path weights
// prod[(-alpha/2) B] ending at column n+d; its dot with B*g on row m+j is the
// j-th term of the path sum. The absolute twin V carries prod[(alpha/2)|B|]
// and yields the tail bound err(N) = 4 * l1(V_N) * max|g| on the frontier row.
// If fixed_depth > 0, exactly that many layers are summed and the stop test is
// skipped (used for brute-force comparisons).
template <class C>
LayerSum<C> path_sum_core(ModeIndex idx, const PulseParams& params, const SourceSpec& source,
                          const TruncationSpec& trunc, int fixed_depth = 0) {
    using R = scalar_t<C>;
    const double sigma = params.sigma0;
    const C half_coupling = C(-params.alpha / 2.0);
    const R half_abs = R(std::abs(params.alpha) / 2.0);

    std::vector<C> W{C(1)};
    std::vector<R> V{R(1)};
    LayerSum<C> out;
    const int cap = fixed_depth > 0 ? fixed_depth : trunc.max_depth;

    for (int j = 0; j < cap; ++j) {
        C term{};
        for (std::size_t i = 0; i < W.size(); ++i) {
            ModeIndex cur{idx.m + j, idx.n - j + 2 * static_cast<int>(i)};
            term += W[i] * bcoef<C>(params, cur) * g<C>(source, params, sigma, cur);
        }
        out.value += term;
        using std::abs;
        out.abs_term_total += abs(term);
        out.depth = j + 1;

        // advance both lattices one layer
        std::vector<C> W2(W.size() + 1, C(0));
        std::vector<R> V2(V.size() + 1, R(0));
        R l1{};
        for (std::size_t i = 0; i < W.size(); ++i) {
            ModeIndex cur{idx.m + j, idx.n - j + 2 * static_cast<int>(i)};
            C b = bcoef<C>(params, cur);
            C wstep = W[i] * half_coupling * b;
            R vstep = V[i] * half_abs * abs(b);
            W2[i] += wstep;
            W2[i + 1] += wstep;
            V2[i] += vstep;
            V2[i + 1] += vstep;
            l1 += 2 * vstep;
        }
        W = std::move(W2);
        V = std::move(V2);

        if (fixed_depth > 0) continue;

        R maxg{};
        for (std::size_t i = 0; i < W.size(); ++i) {
            ModeIndex nxt{idx.m + j + 1, idx.n - j - 1 + 2 * static_cast<int>(i)};
            maxg = std::max(maxg, abs(g<C>(source, params, sigma, nxt)));
        }
        out.err = 4 * l1 * maxg;
        bool no_paths = l1 == 0;
        if (out.depth >= std::max(1, trunc.depth) || no_paths) {
            if (to_double(out.err) <= trunc.tol &&
                (no_paths || to_double(abs(term)) <= trunc.tol / 2)) {
                out.converged = true;
                break;
            }
        }
    }
    if (fixed_depth > 0) out.converged = true;
    return out;
}

}  // namespace detail

// Path-sum evaluation of A_{m,n} at sigma0 with the cancellation ladder.
inline PathSumResult path_sum_A(ModeIndex idx, const PulseParams& params,
                                const SourceSpec& source, const TruncationSpec& trunc,
                                const PrecisionPolicy& policy) {
    if (idx.m < 1) throw DegenerateInput("path_sum_A: requires m >= 1");
    if (!(params.lambda > 0)) throw DegenerateInput("path_sum_A: requires lambda > 0");
    int digits = policy.base_digits;
    for (;;) {
        PathSumResult res = dispatch_precision(digits, [&]<class C>(int d) {
            auto core = detail::path_sum_core<C>(idx, params, source, trunc);
            using std::abs;
            PathSumResult r;
            r.value = cplx(to_double(core.value.real()), to_double(core.value.imag()));
            r.err = to_double(core.err);
            r.depth_used = core.depth;
            r.digits_used = d;
            r.abs_term_total = to_double(core.abs_term_total);
            r.flag = core.converged ? ResultFlag::ok : ResultFlag::unconverged;
            return r;
        });
        if (res.flag == ResultFlag::unconverged) return res;
        auto decision = escalate_if_cancelled(std::abs(res.value), res.abs_term_total,
                                              res.digits_used, policy);
        if (decision == EscalateDecision::accept) return res;
        if (decision == EscalateDecision::exhausted) {
            res.flag = ResultFlag::precision_exhausted;
            return res;
        }
        digits = escalated_digits(res.digits_used, policy);
    }
}

// Literal 2^j enumeration of sign paths, layers j < N. Test oracle only.
template <class C = cplx>
C brute_force_A(ModeIndex idx, const PulseParams& params, const SourceSpec& source, int N) {
    if (N > 12) throw DepthTooLarge("brute_force_A: N > 12");
    if (N < 1) throw DegenerateInput("brute_force_A: N < 1");
    const double sigma = params.sigma0;
    const C half_coupling = C(-params.alpha / 2.0);
    C total{};
    for (int j = 0; j < N; ++j) {
        for (std::uint32_t mask = 0; mask < (1u << j); ++mask) {
            ModeIndex cur = idx;
            C w = bcoef<C>(params, cur);
            for (int l = 0; l < j; ++l) {
                cur = {cur.m + 1, cur.n + ((mask >> l & 1u) ? 1 : -1)};
                w *= half_coupling * bcoef<C>(params, cur);
            }
            total += w * g<C>(source, params, sigma, cur);
        }
    }
    return total;
}

// Fixed-depth DP value (sum of the first N layers), for equivalence tests.
template <class C = cplx>
C path_sum_fixed_depth(ModeIndex idx, const PulseParams& params, const SourceSpec& source,
                       int N) {
    TruncationSpec t;
    t.max_depth = N;
    auto core = detail::path_sum_core<C>(idx, params, source, t, N);
    return core.value;
}

// r = 2 g_{0,n0} - alpha (A_{1,n0-1} + A_{1,n0+1}) at sigma0; the resonant
// column n0 is 0 for omega > 1 and floor(1/omega) otherwise.
inline SurvivalResult survival_amplitude(const PulseParams& params, const SourceSpec& source,
                                         const TruncationSpec& trunc,
                                         const PrecisionPolicy& policy) {
    if (!(params.lambda > 0))
        throw DegenerateInput("survival_amplitude: requires lambda > 0 (use the lambda0 path)");
    const int n0 = params.resonant_n();
    int digits = policy.base_digits;
    for (;;) {
        SurvivalResult res = dispatch_precision(digits, [&]<class C>(int d) {
            using std::abs;
            C g0 = g<C>(source, params, params.sigma0, {0, n0});
            C r_val = C(2) * g0;
            SurvivalResult s;
            s.depth_used = 1;
            s.abs_term_total = to_double(abs(C(2) * g0));
            if (params.alpha != 0.0) {
                auto a_minus = detail::path_sum_core<C>({1, n0 - 1}, params, source, trunc);
                auto a_plus = detail::path_sum_core<C>({1, n0 + 1}, params, source, trunc);
                C scale = C(params.alpha);
                r_val -= scale * (a_minus.value + a_plus.value);
                double am = std::abs(params.alpha);
                s.err_estimate = am * (to_double(a_minus.err) + to_double(a_plus.err));
                s.depth_used = std::max(a_minus.depth, a_plus.depth);
                s.abs_term_total +=
                    am * (to_double(a_minus.abs_term_total) + to_double(a_plus.abs_term_total));
                if (!a_minus.converged || !a_plus.converged) s.flag = ResultFlag::unconverged;
            }
            s.r = cplx(to_double(r_val.real()), to_double(r_val.imag()));
            s.probability = std::norm(s.r);
            s.digits_used = d;
            return s;
        });
        if (res.flag == ResultFlag::unconverged) return res;
        auto decision = escalate_if_cancelled(std::abs(res.r), res.abs_term_total,
                                              res.digits_used, policy);
        if (decision == EscalateDecision::accept) {
            if (params.experimental_band()) res.flag = ResultFlag::experimental;
            return res;
        }
        if (decision == EscalateDecision::exhausted) {
            res.flag = ResultFlag::precision_exhausted;
            return res;
        }
        digits = escalated_digits(res.digits_used, policy);
    }
}

// Section-6 regime: amplitude alpha = lambda, frequency omega = ratio*lambda.
inline SurvivalResult short_pulse_survival(double lambda, double ratio, const SourceSpec& source,
                                           const TruncationSpec& trunc,
                                           const PrecisionPolicy& policy) {
    if (!(lambda > 0)) throw DegenerateInput("short_pulse_survival: requires lambda > 0");
    if (!(ratio > 0)) throw DegenerateInput("short_pulse_survival: requires ratio > 0");
    return survival_amplitude(PulseParams(lambda, ratio * lambda, lambda), source, trunc, policy);
}

struct CoefficientLattice {
    enum class Kind { Inhomogeneous_A, Homogeneous_A0, Residues_R };
    Kind kind = Kind::Residues_R;
    std::unordered_map<ModeIndex, cplx, ModeIndexHash> entries;

    cplx at(ModeIndex idx) const {
        auto it = entries.find(idx);
        return it == entries.end() ? cplx(0.0) : it->second;
    }
};

// Residues of the Laplace solution on the pole cone, seeded by R_{0,n0} = r
// and filled downward by the homogeneous recurrence. Entries exist only on
// {m <= 0, |n - n0| <= |m|, (m + n - n0) even}.
inline CoefficientLattice residue_lattice(cplx r, const PulseParams& params, int m_min) {
    if (m_min > 0 || m_min < -64)
        throw DegenerateInput("residue_lattice: m_min must lie in [-64, 0]");
    const int n0 = params.resonant_n();
    CoefficientLattice lat;
    lat.kind = CoefficientLattice::Kind::Residues_R;
    lat.entries[{0, n0}] = r;
    for (int m = -1; m >= m_min; --m) {
        for (int n = n0 - std::abs(m); n <= n0 + std::abs(m); n += 2) {
            cplx up = lat.at({m + 1, n + 1}) + lat.at({m + 1, n - 1});
            cplx k = kappa<cplx>(params, params.sigma0, {m, n});
            lat.entries[{m, n}] = -(params.alpha / 2.0) * up / (k - 1.0);
        }
    }
    return lat;
}

// Largest homogeneous-recurrence residual over the filled rows m <= -1.
inline double residue_lattice_max_residual(const CoefficientLattice& lat,
                                           const PulseParams& params) {
    double worst = 0.0;
    for (const auto& [idx, val] : lat.entries) {
        if (idx.m >= 0) continue;
        cplx k = kappa<cplx>(params, params.sigma0, idx);
        cplx up = lat.at({idx.m + 1, idx.n + 1}) + lat.at({idx.m + 1, idx.n - 1});
        worst = std::max(worst, std::abs((k - 1.0) * val + (params.alpha / 2.0) * up));
    }
    return worst;
}

namespace detail {

// (exp(t) - 1)/t with the small-t series taking over before cancellation.
template <class C>
C expm1_over(C t) {
    using std::abs;
    if (to_double(abs(t)) < 1e-4)
        return C(1) + t / C(2) + t * t / C(6) + t * t * t / C(24);
    using std::exp;
    return (exp(t) - C(1)) / t;
}

}  // namespace detail

// Laplace-mode spatial profile reconstructed from A_{m,n}:
//   y(x) = (i/(2 kappa)) Int exp(-kappa|x-x'|) psi0 dx' + exp(-kappa|x|) A
//          - exp(-kappa|x|) g / kappa,
// so that y(0) = A. Bound-state convolution in closed form; compact support
// by kink-split quadrature.
template <class C = cplx>
C mode_profile(ModeIndex idx, double x, C A_value, const PulseParams& params,
               const SourceSpec& source) {
    using std::exp;
    const double ax = std::abs(x);
    C k = kappa<C>(params, params.sigma0, idx);
    C gg = g<C>(source, params, params.sigma0, idx);
    C conv;
    if (source.kind == SourceSpec::Kind::BoundState) {
        C ekx = exp(-k * C(ax));
        C ex = C(std::exp(-ax));
        C mid = ex * C(ax) * detail::expm1_over(-(k - C(1)) * C(ax));
        conv = C(0, 1) / (C(2) * k) * ((ekx + ex) / (k + C(1)) + mid);
    } else {
        cplx kd(to_double(k.real()), to_double(k.imag()));
        const double R = source.support_radius;
        auto integrand = [&](double xp) {
            return std::exp(-kd * std::abs(ax - xp)) * source.profile(xp);
        };
        cplx acc = 0.0;
        std::vector<double> cuts{-R, 0.0, std::clamp(ax, -R, R), R};
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            acc += g_compact_quadrature_segment(integrand, cuts[i], cuts[i + 1], kd,
                                                source.quad_tol);
        cplx v = cplx(0.0, 1.0) / (2.0 * kd) * acc;
        conv = C(scalar_t<C>(v.real()), scalar_t<C>(v.imag()));
    }
    C decay = exp(-k * C(ax));
    return conv + decay * A_value - decay * gg / k;
}

}  // namespace pulseion
