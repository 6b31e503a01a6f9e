#include "pulseion/validation.hpp"

#include <cmath>
#include <cstdio>

#include "pulseion/omega0.hpp"
#include "pulseion/oracle.hpp"
#include "pulseion/resolvent.hpp"
#include "pulseion/sweep.hpp"

namespace pulseion {

namespace {

std::string describe(const char* format, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b);
    return buf;
}

// Fixed-depth DP with the tamper hook applied to every B factor.
cplx dp_with_hook(ModeIndex idx, const PulseParams& params, const SourceSpec& source, int N,
                  const ValidationHooks& hooks) {
    std::vector<cplx> W{1.0};
    cplx total = 0.0;
    for (int j = 0; j < N; ++j) {
        std::vector<cplx> W2(W.size() + 1, 0.0);
        for (std::size_t i = 0; i < W.size(); ++i) {
            ModeIndex cur{idx.m + j, idx.n - j + 2 * static_cast<int>(i)};
            cplx b = hooks.perturb_b(bcoef<cplx>(params, cur));
            total += W[i] * b * g<cplx>(source, params, params.sigma0, cur);
            cplx step = W[i] * (-params.alpha / 2.0) * b;
            W2[i] += step;
            W2[i + 1] += step;
        }
        W = std::move(W2);
    }
    return total;
}

CheckResult check_dp_enumeration(const ValidationHooks& hooks) {
    SourceSpec src = SourceSpec::bound_state();
    double worst = 0.0;
    const struct {
        double lam, om;
        int N;
    } cases[] = {{1.0, 3.0, 10}, {0.5, 2.0, 12}};
    for (const auto& c : cases) {
        PulseParams p(c.lam, c.om, 1.0);
        ModeIndex idx{1, 1};
        cplx dp = dp_with_hook(idx, p, src, c.N, hooks);
        cplx bf = brute_force_A<cplx>(idx, p, src, c.N);
        worst = std::max(worst, std::abs(dp - bf) / std::abs(bf));
    }
    return {"dp-vs-enumeration", worst <= 1e-12,
            describe("max relative deviation %.3g (allowed %.3g)", worst, 1e-12)};
}

CheckResult check_alpha0() {
    auto res = survival_amplitude(PulseParams(1.0, 3.0, 0.0), SourceSpec::bound_state(), {}, {});
    bool pass = res.r == cplx(0.0, 1.0) && res.probability == 1.0;
    return {"alpha0-exact", pass,
            describe("r = (%.17g, %.17g), expected (0, 1) exactly", res.r.real(), res.r.imag())};
}

CheckResult check_large_lambda() {
    auto res =
        survival_amplitude(PulseParams(1e4, 1.0, 1.0), SourceSpec::bound_state(), {}, {});
    double dev = std::abs(std::abs(res.r) - 1.0);
    return {"large-lambda-limit", dev < 1e-3, describe("||r|-1| = %.3g (allowed %.3g)", dev, 1e-3)};
}

CheckResult check_omega0_reduction() {
    SourceSpec src = SourceSpec::bound_state();
    double worst = 0.0;
    for (double lam : {0.5, 1.0, 2.0}) {
        TruncationSpec trunc;
        trunc.tol = 1e-13;
        auto general = survival_amplitude(PulseParams(lam, 0.0, 1.0), src, trunc, {});
        auto series = survival_omega0(lam, src, 1e-13, {});
        worst = std::max(worst, std::abs(general.r - series.r) / std::abs(series.r));
    }
    return {"omega0-reduction", worst <= 1e-10,
            describe("max relative gap %.3g (allowed %.3g)", worst, 1e-10)};
}

CheckResult check_oracle_cross() {
    PulseParams p(1.0, 3.0, 1.0);
    auto spectral = survival_amplitude(p, SourceSpec::bound_state(), {}, {});
    GridSpec grid;
    auto field = evolve(p, SourceSpec::bound_state(), grid, {grid.t_max});
    double pde = std::norm(survival_projection(field, grid.t_max));
    double rel = std::abs(spectral.probability - pde) / pde;
    return {"oracle-cross-check", rel <= 0.02,
            describe("spectral vs PDE probability gap %.3g (allowed %.3g)", rel, 0.02)};
}

CheckResult check_fig_slope() {
    SweepConfig cfg;
    cfg.mode = SweepConfig::Mode::omega0;
    cfg.from = 0.1;
    cfg.to = 1.0;
    cfg.points = 20;
    cfg.log_scale = true;
    cfg.source = SourceSpec::bound_state();
    auto rows = run_sweep(cfg);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) pts.emplace_back(r.lambda, std::abs(r.r));
    double slope = slope_fit(pts).slope;
    return {"omega0-power-law-slope", std::abs(slope - 1.0 / 6.0) <= 0.02,
            describe("slope %.4f (required 1/6 +/- %.2f)", slope, 0.02)};
}

}  // namespace

std::vector<CheckResult> run_validation(bool full, const ValidationHooks& hooks) {
    std::vector<CheckResult> out;
    out.push_back(check_dp_enumeration(hooks));
    out.push_back(check_alpha0());
    out.push_back(check_large_lambda());
    out.push_back(check_omega0_reduction());
    if (full) {
        out.push_back(check_oracle_cross());
        out.push_back(check_fig_slope());
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace pulseion
