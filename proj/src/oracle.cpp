#include "pulseion/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "pulseion/errors.hpp"
#include "pulseion/omega0.hpp"

namespace pulseion {

int GridSpec::half_nodes() const {
    return static_cast<int>(std::lround(L / h));
}

void GridSpec::validate() const {
    if (!(L > 0) || !(h > 0) || !(dt > 0) || !(t_max >= 0))
        throw DegenerateInput("grid: L, h, dt must be positive and t_max >= 0");
    if (std::abs(L / h - std::lround(L / h)) > 1e-9)
        throw DegenerateInput("grid: L/h must be an integer");
    if (dt > h + 1e-15) throw DegenerateInput("grid: requires dt <= h");
}

int WaveField::index_of_time(double t) const {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= grid.dt / 2) return static_cast<int>(i);
    throw TimeNotStored("oracle: time " + std::to_string(t) + " not stored");
}

double discrete_bound_frequency(double h) {
    return 2.0 * (std::sqrt(1.0 + h * h) - 1.0) / (h * h);
}

namespace {

double discrete_norm(const std::vector<cplx>& psi, double h) {
    double s = 0.0;
    for (const cplx& v : psi) s += std::norm(v);
    return std::sqrt(h * s);
}

}  // namespace

WaveField evolve(const PulseParams& params, const SourceSpec& source, const GridSpec& grid,
                 const std::vector<double>& sample_times) {
    grid.validate();
    const int K = grid.half_nodes();
    const int n = 2 * K + 1;
    const double h = grid.h, dt = grid.dt;

    WaveField field;
    field.grid = grid;
    field.params = params;
    field.x.resize(n);
    for (int j = 0; j < n; ++j) field.x[j] = (j - K) * h;

    std::vector<cplx> psi(n);
    for (int j = 0; j < n; ++j) {
        double xv = field.x[j];
        psi[j] = source.kind == SourceSpec::Kind::BoundState
                     ? std::exp(-std::abs(xv))
                     : (std::abs(xv) <= source.support_radius ? source.profile(xv) : 0.0);
    }
    double nrm = discrete_norm(psi, h);
    if (!(nrm > 0)) throw DegenerateInput("oracle: initial data has zero norm");
    for (cplx& v : psi) v /= nrm;

    const int steps = static_cast<int>(std::lround(grid.t_max / dt));
    std::set<int> wanted;
    for (double t : sample_times) {
        int s = static_cast<int>(std::lround(t / dt));
        if (s < 0 || s > steps)
            throw DegenerateInput("oracle: sample time outside [0, t_max]");
        wanted.insert(s);
    }
    if (wanted.empty()) wanted.insert(steps);

    auto store = [&](int step) {
        field.times.push_back(step * dt);
        field.samples.push_back(psi);
        field.norms.push_back(discrete_norm(psi, h));
    };
    if (wanted.count(0)) store(0);

    const cplx co(0.0, 0.5 * dt);
    const double kin = 2.0 / (h * h);
    const cplx off = co * (-1.0 / (h * h));
    std::vector<cplx> rhs(n), cp(n), dp(n);
    double norm_prev = discrete_norm(psi, h);

    for (int s = 0; s < steps; ++s) {
        const double t_half = (s + 0.5) * dt;
        const double vcenter =
            -2.0 * (1.0 - params.alpha * std::exp(-params.lambda * t_half) *
                              std::cos(params.omega * t_half)) /
            h;

        auto diag_h = [&](int j) { return kin + (j == K ? vcenter : 0.0); };
        for (int j = 0; j < n; ++j) {
            cplx neighbor = (j > 0 ? psi[j - 1] : 0.0) + (j + 1 < n ? psi[j + 1] : 0.0);
            rhs[j] = psi[j] - co * (diag_h(j) * psi[j] - neighbor / (h * h));
        }
        // Thomas sweep for (1 + i dt/2 H) psi_new = rhs
        cplx b0 = 1.0 + co * diag_h(0);
        cp[0] = off / b0;
        dp[0] = rhs[0] / b0;
        for (int j = 1; j < n; ++j) {
            cplx denom = 1.0 + co * diag_h(j) - off * cp[j - 1];
            cp[j] = off / denom;
            dp[j] = (rhs[j] - off * dp[j - 1]) / denom;
        }
        psi[n - 1] = dp[n - 1];
        for (int j = n - 2; j >= 0; --j) psi[j] = dp[j] - cp[j] * psi[j + 1];

        double norm_now = discrete_norm(psi, h);
        if (std::abs(norm_now - norm_prev) > 1e-10)
            throw StepRejected("oracle: per-step norm drift " +
                               std::to_string(std::abs(norm_now - norm_prev)) + " at t=" +
                               std::to_string((s + 1) * dt));
        norm_prev = norm_now;

        if (!field.reflected) {
            for (int j = 0; j < 5; ++j)
                if (std::abs(psi[j]) >= 1e-6 || std::abs(psi[n - 1 - j]) >= 1e-6) {
                    field.reflected = true;
                    break;
                }
        }
        if (wanted.count(s + 1)) store(s + 1);
    }
    return field;
}

cplx survival_projection(const WaveField& field, double t) {
    const auto& psi = field.samples[field.index_of_time(t)];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j)
        acc += std::exp(-std::abs(field.x[j])) * psi[j];
    return field.grid.h * acc;
}

double box_probability(const WaveField& field, double t, double A_half) {
    if (A_half > field.grid.L + 1e-12)
        throw DegenerateInput("box_probability: A_half exceeds the grid half-length");
    const auto& psi = field.samples[field.index_of_time(t)];
    const int K = field.grid.half_nodes();
    const int J = std::min(K, static_cast<int>(std::lround(A_half / field.grid.h)));
    double acc = 0.0;
    for (int j = -J; j <= J; ++j) {
        double w = (j == -J || j == J) ? 0.5 : 1.0;
        acc += w * std::norm(psi[K + j]);
    }
    return field.grid.h * acc;
}

double remainder_decay_check(const WaveField& field, cplx r_spectral, double t_lo, double t_hi) {
    if (!(field.params.lambda > 0))
        throw DegenerateInput("remainder_decay_check: requires lambda > 0");
    if (t_lo < 5.0 / field.params.lambda - 1e-9)
        throw DegenerateInput("remainder_decay_check: window must start at or after 5/lambda");
    const double wd = discrete_bound_frequency(field.grid.h);
    const cplx model_amp = cplx(0.0, -1.0) * r_spectral;
    std::vector<std::pair<double, double>> pts;
    double peak = 0.0;
    for (double t : field.times) {
        if (t < t_lo - 1e-9 || t > t_hi + 1e-9 || t <= 0.0) continue;
        double dev = std::abs(survival_projection(field, t) -
                              model_amp * std::exp(cplx(0.0, wd * t)));
        peak = std::max(peak, dev);
        pts.emplace_back(t, dev);
    }
    if (peak < 1e-6)
        throw SignalBelowNoise("remainder_decay_check: deviation below the grid error floor");
    return slope_fit(pts).slope;
}

void dump_field_csv(const WaveField& field, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("oracle: cannot open " + path);
    out << "t,x,re,im,abs2\n";
    char buf[160];
    for (std::size_t ti = 0; ti < field.times.size(); ++ti)
        for (std::size_t j = 0; j < field.x.size(); ++j) {
            const cplx& v = field.samples[ti][j];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", field.times[ti],
                          field.x[j], v.real(), v.imag(), std::norm(v));
            out << buf;
        }
}

}  // namespace pulseion
