#include "pulseion/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "pulseion/errors.hpp"
#include "pulseion/lambda0.hpp"
#include "pulseion/omega0.hpp"

namespace pulseion {

void SweepConfig::validate() const {
    if (!(from < to)) throw DegenerateInput("sweep: requires from < to");
    if (points < 2) throw DegenerateInput("sweep: requires points >= 2");
    if (log_scale && !(from > 0)) throw DegenerateInput("sweep: log scale requires from > 0");
}

std::vector<double> SweepConfig::abscissae() const {
    std::vector<double> xs(points);
    if (log_scale) {
        double la = std::log(from), lb = std::log(to);
        for (int i = 0; i < points; ++i)
            xs[i] = std::exp(la + (lb - la) * (static_cast<double>(i) / (points - 1)));
        xs.front() = from;
        xs.back() = to;
    } else {
        for (int i = 0; i < points; ++i)
            xs[i] = from + (to - from) * (static_cast<double>(i) / (points - 1));
    }
    return xs;
}

namespace {

SweepRow evaluate_point(const SweepConfig& cfg, double value) {
    PulseParams p = cfg.fixed;
    if (cfg.parameter == SweepConfig::Param::lambda)
        p = PulseParams(value, cfg.fixed.omega, cfg.fixed.alpha);
    else
        p = PulseParams(cfg.fixed.lambda, value, cfg.fixed.alpha);

    SurvivalResult res;
    switch (cfg.mode) {
        case SweepConfig::Mode::omega0:
            res = survival_omega0(p.lambda, cfg.source, cfg.trunc.tol, cfg.policy);
            p = PulseParams(p.lambda, 0.0, 1.0);
            break;
        case SweepConfig::Mode::shortpulse:
            res = short_pulse_survival(p.lambda, cfg.ratio, cfg.source, cfg.trunc, cfg.policy);
            p = PulseParams(p.lambda, cfg.ratio * p.lambda, p.lambda);
            break;
        default:
            res = survival_amplitude(p, cfg.source, cfg.trunc, cfg.policy);
            break;
    }
    SweepRow row;
    row.lambda = p.lambda;
    row.omega = p.omega;
    row.alpha = p.alpha;
    row.r = res.r;
    row.probability = res.probability;
    row.err_estimate = res.err_estimate;
    row.depth_used = res.depth_used;
    row.digits_used = res.digits_used;
    row.flag = res.flag;
    return row;
}

template <class Fn>
void parallel_for(int count, Fn&& body) {
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                          static_cast<unsigned>(count));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    config.validate();
    if (config.mode == SweepConfig::Mode::lambda0)
        throw DegenerateInput("sweep: lambda0 mode uses run_lambda0_sweep");
    auto xs = config.abscissae();
    std::vector<SweepRow> rows(xs.size());
    parallel_for(static_cast<int>(xs.size()),
                 [&](int i) { rows[i] = evaluate_point(config, xs[i]); });
    return rows;
}

std::vector<Lambda0Row> run_lambda0_sweep(const SweepConfig& config) {
    config.validate();
    if (!(config.fixed.omega > 0))
        throw DegenerateInput("sweep: lambda0 mode requires a positive fixed omega");
    auto xs = config.abscissae();
    std::vector<Lambda0Row> rows(xs.size());
    parallel_for(static_cast<int>(xs.size()), [&](int i) {
        rows[i] = {xs[i], config.fixed.omega, config.M,
                   lambda0_min_singular(config.fixed.omega, {xs[i]}, config.M)};
    });
    return rows;
}

std::string format_rows_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "lambda,omega,alpha,re_r,im_r,abs_r,probability,err_estimate,depth_used,digits_used,"
        "flag\n";
    for (const auto& r : rows) {
        out += fmt(r.lambda) + ',' + fmt(r.omega) + ',' + fmt(r.alpha) + ',' +
               fmt(r.r.real()) + ',' + fmt(r.r.imag()) + ',' + fmt(std::abs(r.r)) + ',' +
               fmt(r.probability) + ',' + fmt(r.err_estimate) + ',' +
               std::to_string(r.depth_used) + ',' + std::to_string(r.digits_used) + ',' +
               flag_name(r.flag) + '\n';
    }
    return out;
}

std::string format_rows_json(const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"lambda", r.lambda},
                       {"omega", r.omega},
                       {"alpha", r.alpha},
                       {"re_r", r.r.real()},
                       {"im_r", r.r.imag()},
                       {"abs_r", std::abs(r.r)},
                       {"probability", r.probability},
                       {"err_estimate", r.err_estimate},
                       {"depth_used", r.depth_used},
                       {"digits_used", r.digits_used},
                       {"flag", flag_name(r.flag)}});
    return arr.dump(2) + "\n";
}

std::string format_lambda0_csv(const std::vector<Lambda0Row>& rows) {
    std::string out = "sigma,omega,M,min_singular\n";
    for (const auto& r : rows)
        out += fmt(r.sigma) + ',' + fmt(r.omega) + ',' + std::to_string(r.M) + ',' +
               fmt(r.min_singular) + '\n';
    return out;
}

std::string format_lambda0_json(const std::vector<Lambda0Row>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"sigma", r.sigma},
                       {"omega", r.omega},
                       {"M", r.M},
                       {"min_singular", r.min_singular}});
    return arr.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("sweep: cannot open " + path);
    out << body;
}

}  // namespace pulseion
