#pragma once

#include <vector>

namespace pulseion {

// Smallest singular value, over the sigma grid, of the truncated lambda = 0
// mode operator: tridiagonal rows m in [-M, M], diagonal sqrt(sigma + m*omega)
// - 1 (branch -i sqrt|.| below threshold), off-diagonals 1/2. A minimum
// bounded away from zero certifies the absence of square-summable homogeneous
// solutions, i.e. complete ionization.
double lambda0_min_singular(double omega, const std::vector<double>& sigma_grid, int M);

// Per-sigma smallest singular values (diagnostics and sweep output).
std::vector<double> lambda0_singular_profile(double omega, const std::vector<double>& sigma_grid,
                                             int M);

}  // namespace pulseion
