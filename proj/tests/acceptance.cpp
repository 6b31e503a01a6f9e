// Acceptance gates. Each invocation evaluates one numbered criterion and
// prints a single verdict line: "criterion N <name>: PASS|FAIL (...)".
// Exit code 0 on PASS, 1 on FAIL, 2 on usage error.
//
// Criteria 1 and 2 compare the solver against the encoded small-lambda
// asymptotic magnitude 0.57798 lambda^{1/6}. The computed amplitudes,
// cross-validated against the PDE integrator (criterion 3) and the internal
// representation checks (criterion 5), converge onto twice that magnitude, so
// these two gates currently fail; the measurements are printed so the gap is
// visible rather than hidden. See README.md.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "pulseion/lambda0.hpp"
#include "pulseion/omega0.hpp"
#include "pulseion/oracle.hpp"
#include "pulseion/resolvent.hpp"
#include "pulseion/sweep.hpp"

using namespace pulseion;

namespace {

struct Verdict {
    bool pass = false;
    std::string measured;
    std::string required;
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

const SourceSpec kBound = SourceSpec::bound_state();

// 1: omega = 0 magnitude power law over lambda in [0.1, 1].
Verdict criterion_1() {
    SweepConfig cfg;
    cfg.mode = SweepConfig::Mode::omega0;
    cfg.from = 0.1;
    cfg.to = 1.0;
    cfg.points = 20;
    cfg.log_scale = true;
    auto rows = run_sweep(cfg);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) pts.emplace_back(r.lambda, std::abs(r.r));
    double slope = slope_fit(pts).slope;
    Verdict v;
    v.pass = std::abs(slope - 1.0 / 6.0) <= 0.02;
    v.measured = fmt("log-log slope %.4f over 20 points", slope);
    v.required = "1/6 +/- 0.02";
    return v;
}

// 2: small-lambda constant 0.57798 in |r| ~ C lambda^(1/6).
Verdict criterion_2() {
    auto ratio = [](double lam) {
        auto res = survival_omega0(lam, kBound, 1e-12, {});
        return std::abs(res.r) / (0.57798 * std::pow(lam, 1.0 / 6.0));
    };
    double q05 = ratio(0.5), q02 = ratio(0.2), q01 = ratio(0.1);
    bool band = q02 >= 0.9 && q02 <= 1.1 && q01 >= 0.9 && q01 <= 1.1;
    bool trend = std::abs(q01 - 1.0) < std::abs(q05 - 1.0);
    Verdict v;
    v.pass = band && trend;
    v.measured = fmt("|r|/(0.57798 lambda^(1/6)) = %.3f, %.3f, %.3f at lambda = 0.5, 0.2, 0.1",
                     q05, q02, q01);
    v.required = "within [0.9, 1.1] at 0.2 and 0.1, and 0.1 closer to 1 than 0.5";
    return v;
}

// 3: spectral probability against the Richardson-extrapolated PDE oracle.
Verdict criterion_3() {
    auto gap = [](const PulseParams& p) {
        double spectral = survival_amplitude(p, kBound, {}, {}).probability;
        auto pde = [&](double h) {
            GridSpec g{200.0, h, 0.01, 30.0};
            auto f = evolve(p, kBound, g, {30.0});
            return std::norm(survival_projection(f, 30.0));
        };
        double richardson = 2.0 * pde(0.025) - pde(0.05);
        return std::abs(spectral - richardson) / richardson;
    };
    double g1 = gap(PulseParams(1.0, 3.0, 1.0));
    double g2 = gap(PulseParams(0.5, 2.0, 1.0));
    Verdict v;
    v.pass = g1 <= 0.02 && g2 <= 0.04;
    v.measured = fmt("relative gap %.4f at (1,3,1) and %.4f at (0.5,2,1)", g1, g2);
    v.required = "<= 0.02 and <= 0.04";
    return v;
}

// 4: exact limits: alpha = 0 and the sudden (large lambda) regime.
Verdict criterion_4() {
    auto off = survival_amplitude(PulseParams(1.0, 3.0, 0.0), kBound, {}, {});
    bool exact = off.r == cplx(0.0, 1.0) && off.probability == 1.0;
    auto sudden = survival_amplitude(PulseParams(1e4, 1.0, 1.0), kBound, {}, {});
    double dev = std::abs(std::abs(sudden.r) - 1.0);
    Verdict v;
    v.pass = exact && dev < 1e-3;
    v.measured = fmt("alpha=0 exact: %s; ||r|-1| = %.2e at lambda = 1e4", exact ? "yes" : "no",
                     dev);
    v.required = "r = i and probability = 1 bit-exact; deviation < 1e-3";
    return v;
}

// 5: DP path sum vs brute-force enumeration, and the omega = 0 reduction.
Verdict criterion_5() {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> lam(0.3, 3.0), om(1.2, 6.0), al(0.3, 1.5);
    std::uniform_int_distribution<int> nn(-3, 3);
    double worst_dp = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        PulseParams p(lam(rng), om(rng), al(rng));
        ModeIndex idx{1, nn(rng)};
        for (int N : {10, 12}) {
            cplx dp = path_sum_fixed_depth<cplx>(idx, p, kBound, N);
            cplx bf = brute_force_A<cplx>(idx, p, kBound, N);
            worst_dp = std::max(worst_dp, std::abs(dp - bf) / std::abs(bf));
        }
    }
    double worst_red = 0.0;
    TruncationSpec tight;
    tight.tol = 1e-13;
    for (double lv : {0.5, 1.0, 2.0}) {
        auto general = survival_amplitude(PulseParams(lv, 0.0, 1.0), kBound, tight, {});
        auto series = survival_omega0(lv, kBound, 1e-13, {});
        worst_red = std::max(worst_red, std::abs(general.r - series.r) / std::abs(series.r));
    }
    Verdict v;
    v.pass = worst_dp <= 1e-12 && worst_red <= 1e-10;
    v.measured = fmt("max DP-vs-enumeration dev %.2e over 20 draws x {10,12}; "
                     "max omega=0 reduction dev %.2e",
                     worst_dp, worst_red);
    v.required = "<= 1e-12 and <= 1e-10 relative";
    return v;
}

// 6: residue lattice: recurrence residual and exact support cone.
Verdict criterion_6() {
    PulseParams p(1.0, 3.0, 1.0);  // omega > 1, so the seed row sits at n0 = 0
    cplx r = survival_amplitude(p, kBound, {}, {}).r;
    CoefficientLattice lat = residue_lattice(r, p, -20);
    double residual = residue_lattice_max_residual(lat, p);
    bool support = lat.entries.size() == 231;
    for (const auto& [idx, val] : lat.entries) {
        (void)val;
        if (idx.m > 0 || std::abs(idx.n) > -idx.m || (idx.m + idx.n) % 2 != 0) support = false;
    }
    Verdict v;
    v.pass = residual < 1e-10 && support;
    v.measured = fmt("max residual %.2e down to m = -20; support cone %s", residual,
                     support ? "exact" : "violated");
    v.required = "residual < 1e-10; entries confined to {m <= 0, |n| <= |m|, m+n even}";
    return v;
}

// 7: lambda = 0 complete ionization: operator injectivity and box decay.
Verdict criterion_7() {
    const double omega = 3.0;
    const std::vector<double> sigmas{0.3, 0.5, 1.0, 2.0};
    double min200 = 1e300, worst_change = 0.0;
    for (double s : sigmas) {
        double v200 = lambda0_min_singular(omega, {s}, 200);
        double v400 = lambda0_min_singular(omega, {s}, 400);
        min200 = std::min(min200, v200);
        worst_change = std::max(worst_change, std::abs(v400 - v200) / v200);
    }

    GridSpec g{140.0, 0.05, 0.01, 40.0};
    std::vector<double> times;
    for (int t = 10; t <= 40; ++t) times.push_back(t);
    auto f = evolve(PulseParams(0.0, 5.0, 1.0), kBound, g, times);
    std::vector<std::pair<double, double>> pts;
    for (double t : times) pts.emplace_back(t, box_probability(f, t, 1.0));
    double slope = slope_fit(pts).slope;

    Verdict v;
    v.pass = min200 > 0.05 && worst_change < 0.10 && slope >= -3.7 && slope <= -2.3;
    v.measured = fmt("min singular value %.4f (M change %.2f%%); box decay slope %.2f%s", min200,
                     100.0 * worst_change, slope, f.reflected ? " (reflected)" : "");
    v.required = "> 0.05, < 10% under M = 200 -> 400; slope in [-3.7, -2.3]";
    return v;
}

// 8: short-pulse curves: bounded, continuous, oscillations grow as the
// frequency-to-decay ratio shrinks.
Verdict criterion_8() {
    auto curve = [](double ratio) {
        std::vector<double> p;
        for (int i = 0; i <= 90; ++i)
            p.push_back(short_pulse_survival(1.0 + 0.1 * i, ratio, kBound, {}, {}).probability);
        return p;
    };
    auto extrema = [](const std::vector<double>& p) {
        int count = 0;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            double dl = p[i] - p[i - 1], dr = p[i + 1] - p[i];
            if (dl * dr < 0 && std::min(std::abs(dl), std::abs(dr)) > 1e-9) ++count;
        }
        return count;
    };
    auto p20 = curve(20.0), p5 = curve(5.0);
    double lo = 1e300, hi = -1e300, jump = 0.0;
    for (const auto* c : {&p20, &p5}) {
        for (std::size_t i = 0; i < c->size(); ++i) {
            lo = std::min(lo, (*c)[i]);
            hi = std::max(hi, (*c)[i]);
            if (i) jump = std::max(jump, std::abs((*c)[i] - (*c)[i - 1]));
        }
    }
    int n20 = extrema(p20), n5 = extrema(p5);
    Verdict v;
    v.pass = lo >= 0.0 && hi <= 1.01 && jump < 0.2 && n5 >= n20;
    v.measured = fmt("range [%.3f, %.3f], max jump %.3f, extrema %d (ratio 5) vs %d (ratio 20)",
                     lo, hi, jump, n5, n20);
    v.required = "within [0, 1.01], jumps < 0.2, ratio-5 extrema >= ratio-20 extrema";
    return v;
}

// 9: oracle integrity: unitarity, eigenstate retention, initial box mass.
Verdict criterion_9() {
    GridSpec g{200.0, 0.05, 0.01, 30.0};
    auto driven = evolve(PulseParams(1.0, 3.0, 1.0), kBound, g,
                         {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0});
    double drift = 0.0;
    for (double nv : driven.norms) drift = std::max(drift, std::abs(nv - 1.0));

    GridSpec g2{200.0, 0.05, 0.01, 10.0};
    auto free_run = evolve(PulseParams(1.0, 3.0, 0.0), kBound, g2, {0.0, 10.0});
    double retention = std::abs(survival_projection(free_run, 10.0)) /
                       std::abs(survival_projection(free_run, 0.0));

    GridSpec fine{10.0, 0.0025, 0.002, 0.0};
    auto f0 = evolve(PulseParams(1.0, 3.0, 1.0), kBound, fine, {0.0});
    double box_dev = std::abs(box_probability(f0, 0.0, 1.0) - (1.0 - std::exp(-2.0)));

    Verdict v;
    v.pass = drift < 1e-6 && retention >= 0.999 && box_dev < 1e-5;
    v.measured =
        fmt("norm drift %.2e; retention %.6f at t = 10; box deviation %.2e", drift, retention,
            box_dev);
    v.required = "drift < 1e-6; retention >= 0.999; |box - (1 - e^-2)| < 1e-5";
    return v;
}

const char* kNames[] = {"small-lambda-power-law",  "small-lambda-constant",
                        "pde-cross-check",         "exact-limits",
                        "representation-equivalence", "residue-lattice",
                        "static-phase-ionization", "short-pulse-properties",
                        "oracle-integrity"};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..9>\n");
        return 2;
    }
    int n = std::atoi(argv[1]);
    if (n < 1 || n > 9) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..9>\n");
        return 2;
    }
    Verdict v;
    switch (n) {
        case 1: v = criterion_1(); break;
        case 2: v = criterion_2(); break;
        case 3: v = criterion_3(); break;
        case 4: v = criterion_4(); break;
        case 5: v = criterion_5(); break;
        case 6: v = criterion_6(); break;
        case 7: v = criterion_7(); break;
        case 8: v = criterion_8(); break;
        default: v = criterion_9(); break;
    }
    std::printf("criterion %d %s: %s (measured %s; required %s)\n", n, kNames[n - 1],
                v.pass ? "PASS" : "FAIL", v.measured.c_str(), v.required.c_str());
    return v.pass ? 0 : 1;
}
