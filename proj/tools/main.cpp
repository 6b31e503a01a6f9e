// Command-line front end for the pulseion library. Subcommands cover single
// evaluations (survival, omega0, shortpulse), tabulated sweeps, the lambda = 0
// ionization certificate, the Crank-Nicolson cross-check oracle, and the
// self-validation suite.
//
// Exit codes: 0 success, 1 argument error, 2 unconverged or precision-limited
// result (record still printed, see the flag column), 3 failed validation.

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pulseion/errors.hpp"
#include "pulseion/lambda0.hpp"
#include "pulseion/omega0.hpp"
#include "pulseion/oracle.hpp"
#include "pulseion/resolvent.hpp"
#include "pulseion/sweep.hpp"
#include "pulseion/validation.hpp"

namespace {

using namespace pulseion;

SweepRow make_row(double lambda, double omega, double alpha, const SurvivalResult& res) {
    SweepRow row;
    row.lambda = lambda;
    row.omega = omega;
    row.alpha = alpha;
    row.r = res.r;
    row.probability = res.probability;
    row.err_estimate = res.err_estimate;
    row.depth_used = res.depth_used;
    row.digits_used = res.digits_used;
    row.flag = res.flag;
    return row;
}

int emit_single(const SweepRow& row, SweepConfig::Format format) {
    const std::string body = format == SweepConfig::Format::csv ? format_rows_csv({row})
                                                                : format_rows_json({row});
    std::fputs(body.c_str(), stdout);
    const bool degraded =
        row.flag == ResultFlag::unconverged || row.flag == ResultFlag::precision_exhausted;
    return degraded ? 2 : 0;
}

struct PointArgs {
    double lambda = 1.0;
    double omega = 3.0;
    double alpha = 1.0;
    double ratio = 20.0;
    std::string psi0 = "bound";
    double tol = 1e-10;
    int depth = 8;
    SweepConfig::Format format = SweepConfig::Format::csv;
};

TruncationSpec make_trunc(const PointArgs& a) {
    TruncationSpec trunc;
    trunc.depth = a.depth;
    trunc.tol = a.tol;
    return trunc;
}

int run_survival(const PointArgs& a) {
    if (a.lambda == 0.0) {
        std::fprintf(stderr,
                     "survival: lambda = 0 means the pulse never dies out and no survival "
                     "amplitude exists; the complete-ionization certificate lives in the "
                     "lambda0 subcommand (pulseion lambda0 --omega %g).\n",
                     a.omega);
        return 1;
    }
    if (!(a.lambda > 0.0)) {
        std::fprintf(stderr, "survival: --lambda must be positive\n");
        return 1;
    }
    if (a.omega == 0.0) {
        std::fprintf(stderr,
                     "survival: omega = 0 is served by the dedicated series "
                     "(pulseion omega0 --lambda %g).\n",
                     a.lambda);
        return 1;
    }
    if (!(a.omega > 0.0)) {
        std::fprintf(stderr, "survival: --omega must be nonnegative\n");
        return 1;
    }
    const SourceSpec source = SourceSpec::parse(a.psi0);
    const auto res = survival_amplitude(PulseParams(a.lambda, a.omega, a.alpha), source,
                                        make_trunc(a), default_policy());
    return emit_single(make_row(a.lambda, a.omega, a.alpha, res), a.format);
}

int run_omega0(const PointArgs& a) {
    const SourceSpec source = SourceSpec::parse(a.psi0);
    const auto res = survival_omega0(a.lambda, source, a.tol, default_policy());
    return emit_single(make_row(a.lambda, 0.0, 1.0, res), a.format);
}

int run_shortpulse(const PointArgs& a) {
    const SourceSpec source = SourceSpec::parse(a.psi0);
    const auto res =
        short_pulse_survival(a.lambda, a.ratio, source, make_trunc(a), default_policy());
    return emit_single(make_row(a.lambda, a.ratio * a.lambda, a.lambda, res), a.format);
}

struct Lambda0Args {
    double omega = 3.0;
    std::vector<double> sigma;
    int M = 200;
    SweepConfig::Format format = SweepConfig::Format::csv;
};

int run_lambda0(const Lambda0Args& a) {
    std::vector<double> grid = a.sigma;
    if (grid.empty())
        for (int j = 1; j <= 4; ++j) grid.push_back(a.omega * j / 5.0);
    std::sort(grid.begin(), grid.end());
    const std::vector<double> vals = lambda0_singular_profile(a.omega, grid, a.M);
    std::vector<Lambda0Row> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        rows.push_back({grid[i], a.omega, a.M, vals[i]});
    const std::string body = a.format == SweepConfig::Format::csv ? format_lambda0_csv(rows)
                                                                  : format_lambda0_json(rows);
    std::fputs(body.c_str(), stdout);
    return 0;
}

struct OracleArgs {
    double lambda = 1.0;
    double omega = 3.0;
    double alpha = 1.0;
    std::string psi0 = "bound";
    double grid_L = 200.0;
    double grid_h = 0.05;
    double dt = 0.01;
    double t_max = 30.0;
    double box = 1.0;
    double sample_every = 1.0;
    std::string dump;
    SweepConfig::Format format = SweepConfig::Format::csv;
};

int run_oracle(const OracleArgs& a) {
    if (!(a.lambda >= 0.0)) {
        std::fprintf(stderr, "oracle: --lambda must be nonnegative (the pulse would blow up)\n");
        return 1;
    }
    GridSpec grid;
    grid.L = a.grid_L;
    grid.h = a.grid_h;
    grid.dt = a.dt;
    grid.t_max = a.t_max;

    std::vector<double> sample_times;
    for (double t = 0.0; t < a.t_max; t += a.sample_every) sample_times.push_back(t);
    sample_times.push_back(a.t_max);

    const SourceSpec source = SourceSpec::parse(a.psi0);
    const WaveField field =
        evolve(PulseParams(a.lambda, a.omega, a.alpha), source, grid, sample_times);
    if (!a.dump.empty()) dump_field_csv(field, a.dump);

    const char* flag = field.reflected ? "reflected" : "ok";
    if (a.format == SweepConfig::Format::csv) {
        std::string body = "t,norm,re_proj,im_proj,survival,box_probability,flag\n";
        char buf[256];
        for (std::size_t i = 0; i < field.times.size(); ++i) {
            const double t = field.times[i];
            const cplx proj = survival_projection(field, t);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", t,
                          field.norms[i], proj.real(), proj.imag(), std::norm(proj),
                          box_probability(field, t, a.box), flag);
            body += buf;
        }
        std::fputs(body.c_str(), stdout);
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t i = 0; i < field.times.size(); ++i) {
            const double t = field.times[i];
            const cplx proj = survival_projection(field, t);
            arr.push_back({{"t", t},
                           {"norm", field.norms[i]},
                           {"re_proj", proj.real()},
                           {"im_proj", proj.imag()},
                           {"survival", std::norm(proj)},
                           {"box_probability", box_probability(field, t, a.box)},
                           {"flag", flag}});
        }
        std::fputs((arr.dump(2) + "\n").c_str(), stdout);
    }
    return 0;
}

struct SweepArgs {
    SweepConfig::Param param = SweepConfig::Param::lambda;
    SweepConfig::Mode mode = SweepConfig::Mode::general;
    double from = 0.1;
    double to = 1.0;
    int points = 20;
    bool log_scale = false;
    PointArgs fixed;
    int M = 200;
    std::string output;
};

int run_sweep_cmd(const SweepArgs& a) {
    SweepConfig cfg;
    cfg.parameter = a.param;
    cfg.mode = a.mode;
    cfg.from = a.from;
    cfg.to = a.to;
    cfg.points = a.points;
    cfg.log_scale = a.log_scale;
    cfg.fixed = PulseParams(a.fixed.lambda, a.fixed.omega, a.fixed.alpha);
    cfg.ratio = a.fixed.ratio;
    cfg.M = a.M;
    cfg.output = a.output;
    cfg.format = a.fixed.format;
    cfg.trunc = make_trunc(a.fixed);
    cfg.policy = default_policy();
    cfg.source = SourceSpec::parse(a.fixed.psi0);
    cfg.validate();

    std::string body;
    int code = 0;
    if (cfg.mode == SweepConfig::Mode::lambda0) {
        const auto rows = run_lambda0_sweep(cfg);
        body = cfg.format == SweepConfig::Format::csv ? format_lambda0_csv(rows)
                                                      : format_lambda0_json(rows);
    } else {
        const auto rows = run_sweep(cfg);
        body = cfg.format == SweepConfig::Format::csv ? format_rows_csv(rows)
                                                      : format_rows_json(rows);
        for (const SweepRow& row : rows)
            if (row.flag == ResultFlag::unconverged ||
                row.flag == ResultFlag::precision_exhausted)
                code = 2;
    }
    if (cfg.output.empty())
        std::fputs(body.c_str(), stdout);
    else
        write_text_file(cfg.output, body);
    return code;
}

int run_validate(bool full) {
    const auto results = run_validation(full);
    for (const CheckResult& c : results)
        std::printf("check %-24s %s  (%s)\n", c.name.c_str(), c.pass ? "PASS" : "FAIL",
                    c.detail.c_str());
    return all_passed(results) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pulseion: post-pulse survival amplitude of a 1D delta-well atom driven by a "
        "decaying oscillatory pulse"};
    app.set_version_flag("--version", "pulseion 1.0.0");
    app.require_subcommand(1);

    const std::map<std::string, SweepConfig::Format> fmt_map{
        {"csv", SweepConfig::Format::csv}, {"json", SweepConfig::Format::json}};
    const std::map<std::string, SweepConfig::Param> param_map{
        {"lambda", SweepConfig::Param::lambda}, {"omega", SweepConfig::Param::omega}};
    const std::map<std::string, SweepConfig::Mode> mode_map{
        {"general", SweepConfig::Mode::general},
        {"omega0", SweepConfig::Mode::omega0},
        {"shortpulse", SweepConfig::Mode::shortpulse},
        {"lambda0", SweepConfig::Mode::lambda0}};
    const std::map<std::string, bool> level_map{{"quick", false}, {"full", true}};

    auto add_common = [&](CLI::App* sub, PointArgs& a, bool with_depth) {
        sub->add_option("--psi0", a.psi0, "initial state: bound | bump:radius=R")
            ->capture_default_str();
        sub->add_option("--tol", a.tol, "target absolute error")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        if (with_depth)
            sub->add_option("--depth", a.depth, "minimum path-sum depth")
                ->check(CLI::Range(1, 400))
                ->capture_default_str();
        sub->add_option("--format", a.format, "output format")
            ->transform(CLI::CheckedTransformer(fmt_map, CLI::ignore_case))
            ->default_str("csv");
    };

    PointArgs sv;
    CLI::App* sc_survival =
        app.add_subcommand("survival", "survival amplitude r(lambda, omega) at one point");
    sc_survival->add_option("--lambda", sv.lambda, "pulse decay rate")->required();
    sc_survival->add_option("--omega", sv.omega, "pulse frequency")->required();
    sc_survival->add_option("--alpha", sv.alpha, "pulse amplitude")->capture_default_str();
    add_common(sc_survival, sv, true);

    PointArgs o0;
    CLI::App* sc_omega0 =
        app.add_subcommand("omega0", "omega = 0 survival amplitude via the dedicated series");
    sc_omega0->add_option("--lambda", o0.lambda, "pulse decay rate")
        ->required()
        ->check(CLI::PositiveNumber);
    add_common(sc_omega0, o0, false);

    PointArgs sp;
    CLI::App* sc_shortpulse = app.add_subcommand(
        "shortpulse", "short-pulse scaling point: omega = ratio*lambda, alpha = lambda");
    sc_shortpulse->add_option("--lambda", sp.lambda, "pulse decay rate")
        ->required()
        ->check(CLI::PositiveNumber);
    sc_shortpulse->add_option("--ratio", sp.ratio, "omega / lambda")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(sc_shortpulse, sp, true);

    Lambda0Args l0;
    CLI::App* sc_lambda0 = app.add_subcommand(
        "lambda0", "lambda = 0 ionization certificate: smallest singular values");
    sc_lambda0->add_option("--omega", l0.omega, "pulse frequency")
        ->required()
        ->check(CLI::PositiveNumber);
    sc_lambda0->add_option("--sigma", l0.sigma,
                           "sigma grid points in (0, omega); default 4 interior points");
    sc_lambda0->add_option("--M", l0.M, "mode truncation half-width")
        ->check(CLI::Range(50, 100000))
        ->capture_default_str();
    sc_lambda0->add_option("--format", l0.format, "output format")
        ->transform(CLI::CheckedTransformer(fmt_map, CLI::ignore_case))
        ->default_str("csv");

    OracleArgs oa;
    CLI::App* sc_oracle =
        app.add_subcommand("oracle", "Crank-Nicolson PDE evolution (cross-check)");
    sc_oracle->add_option("--lambda", oa.lambda, "pulse decay rate (0 allowed)")
        ->capture_default_str();
    sc_oracle->add_option("--omega", oa.omega, "pulse frequency")->capture_default_str();
    sc_oracle->add_option("--alpha", oa.alpha, "pulse amplitude")->capture_default_str();
    sc_oracle->add_option("--psi0", oa.psi0, "initial state: bound | bump:radius=R")
        ->capture_default_str();
    sc_oracle->add_option("--grid-L", oa.grid_L, "half-width of the spatial box")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc_oracle->add_option("--grid-h", oa.grid_h, "spatial step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc_oracle->add_option("--dt", oa.dt, "time step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc_oracle->add_option("--tmax", oa.t_max, "final time")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sc_oracle->add_option("--box", oa.box, "half-width of the probability box")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc_oracle->add_option("--sample-every", oa.sample_every, "sampling interval")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc_oracle->add_option("--dump", oa.dump, "write the full field to this CSV path");
    sc_oracle->add_option("--format", oa.format, "output format")
        ->transform(CLI::CheckedTransformer(fmt_map, CLI::ignore_case))
        ->default_str("csv");

    SweepArgs sw;
    CLI::App* sc_sweep = app.add_subcommand("sweep", "tabulate a parameter sweep");
    sc_sweep->add_option("--param", sw.param, "swept parameter (sigma when --mode lambda0)")
        ->transform(CLI::CheckedTransformer(param_map, CLI::ignore_case))
        ->default_str("lambda");
    sc_sweep->add_option("--mode", sw.mode, "solver family")
        ->transform(CLI::CheckedTransformer(mode_map, CLI::ignore_case))
        ->default_str("general");
    sc_sweep->add_option("--from", sw.from, "sweep start")->required();
    sc_sweep->add_option("--to", sw.to, "sweep end")->required();
    sc_sweep->add_option("--points", sw.points, "number of points")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    const std::map<std::string, bool> scale_map{{"linear", false}, {"log", true}};
    sc_sweep->add_option("--scale", sw.log_scale, "abscissa spacing")
        ->transform(CLI::CheckedTransformer(scale_map, CLI::ignore_case))
        ->default_str("linear");
    sc_sweep->add_option("--lambda", sw.fixed.lambda, "fixed lambda (when omega is swept)")
        ->capture_default_str();
    sc_sweep->add_option("--omega", sw.fixed.omega, "fixed omega (when lambda is swept)")
        ->capture_default_str();
    sc_sweep->add_option("--alpha", sw.fixed.alpha, "pulse amplitude")->capture_default_str();
    sc_sweep->add_option("--ratio", sw.fixed.ratio, "omega / lambda for shortpulse mode")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc_sweep->add_option("--M", sw.M, "lambda0 truncation half-width")
        ->check(CLI::Range(50, 100000))
        ->capture_default_str();
    sc_sweep->add_option("--output", sw.output, "write the table here instead of stdout");
    add_common(sc_sweep, sw.fixed, true);

    bool validate_full = false;
    CLI::App* sc_validate = app.add_subcommand("validate", "run the self-validation suite");
    sc_validate->add_option("--level", validate_full, "quick (< 1 min) or full (< 20 min)")
        ->transform(CLI::CheckedTransformer(level_map, CLI::ignore_case))
        ->default_str("quick");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sc_survival->parsed()) return run_survival(sv);
        if (sc_omega0->parsed()) return run_omega0(o0);
        if (sc_shortpulse->parsed()) return run_shortpulse(sp);
        if (sc_lambda0->parsed()) return run_lambda0(l0);
        if (sc_oracle->parsed()) return run_oracle(oa);
        if (sc_sweep->parsed()) return run_sweep_cmd(sw);
        if (sc_validate->parsed()) return run_validate(validate_full);
    } catch (const StepRejected& e) {
        std::fprintf(stderr, "pulseion: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "pulseion: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
