#pragma once

#include <string>
#include <vector>

#include "pulseion/core.hpp"
#include "pulseion/precision.hpp"
#include "pulseion/resolvent.hpp"
#include "pulseion/source_terms.hpp"

namespace pulseion {

struct SweepConfig {
    enum class Param { lambda, omega };
    enum class Mode { general, omega0, shortpulse, lambda0 };
    enum class Format { csv, json };

    Param parameter = Param::lambda;
    double from = 0.1;
    double to = 1.0;
    int points = 20;
    bool log_scale = false;
    PulseParams fixed;  // holds whichever of lambda/omega/alpha is not swept
    Mode mode = Mode::general;
    double ratio = 20.0;  // shortpulse: omega / lambda
    int M = 200;          // lambda0 truncation half-width
    std::string output;
    Format format = Format::csv;
    TruncationSpec trunc;
    PrecisionPolicy policy;
    SourceSpec source;

    void validate() const;
    std::vector<double> abscissae() const;
};

struct SweepRow {
    double lambda = 0.0;
    double omega = 0.0;
    double alpha = 0.0;
    cplx r;
    double probability = 0.0;
    double err_estimate = 0.0;
    int depth_used = 0;
    int digits_used = 15;
    ResultFlag flag = ResultFlag::ok;
};

struct Lambda0Row {
    double sigma = 0.0;
    double omega = 0.0;
    int M = 0;
    double min_singular = 0.0;
};

// Evaluates all points (concurrently; results ordered by abscissa) for the
// survival modes. lambda0 mode uses run_lambda0_sweep instead.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// lambda0 mode: the swept parameter is sigma in (0, omega) at fixed omega.
std::vector<Lambda0Row> run_lambda0_sweep(const SweepConfig& config);

std::string format_rows_csv(const std::vector<SweepRow>& rows);
std::string format_rows_json(const std::vector<SweepRow>& rows);
std::string format_lambda0_csv(const std::vector<Lambda0Row>& rows);
std::string format_lambda0_json(const std::vector<Lambda0Row>& rows);

void write_text_file(const std::string& path, const std::string& body);

}  // namespace pulseion
