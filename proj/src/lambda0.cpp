#include "pulseion/lambda0.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "pulseion/errors.hpp"

namespace pulseion {

namespace {

double smallest_singular(double omega, double sigma, int M) {
    const int n = 2 * M + 1;
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        int m = i - M;
        double rad = sigma + m * omega;
        if (rad == 0.0)
            throw ThresholdHit("lambda0: sigma + m*omega = 0 at m=" + std::to_string(m));
        std::complex<double> root =
            rad > 0.0 ? std::complex<double>(std::sqrt(rad), 0.0)
                      : std::complex<double>(0.0, -std::sqrt(-rad));
        T(i, i) = root - 1.0;
        if (i + 1 < n) {
            T(i, i + 1) = 0.5;
            T(i + 1, i) = 0.5;
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(T);
    return svd.singularValues().minCoeff();
}

void check_args(double omega, const std::vector<double>& sigma_grid, int M) {
    if (!(omega > 0)) throw DegenerateInput("lambda0: requires omega > 0");
    if (M < 50) throw DegenerateInput("lambda0: requires M >= 50");
    if (sigma_grid.empty()) throw DegenerateInput("lambda0: empty sigma grid");
    for (double s : sigma_grid)
        if (!(s > 0) || !(s < omega))
            throw DegenerateInput("lambda0: sigma values must lie in (0, omega)");
}

}  // namespace

std::vector<double> lambda0_singular_profile(double omega, const std::vector<double>& sigma_grid,
                                             int M) {
    check_args(omega, sigma_grid, M);
    std::vector<double> out;
    out.reserve(sigma_grid.size());
    for (double s : sigma_grid) out.push_back(smallest_singular(omega, s, M));
    return out;
}

double lambda0_min_singular(double omega, const std::vector<double>& sigma_grid, int M) {
    auto prof = lambda0_singular_profile(omega, sigma_grid, M);
    return *std::min_element(prof.begin(), prof.end());
}

}  // namespace pulseion
