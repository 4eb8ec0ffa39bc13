// SPDX-License-Identifier: Apache-2.0
//
// Minimal dense least squares for small identification systems:
// Householder QR with a singular-value condition estimate from the
// reduced triangular factor.
#pragma once

#include <cstddef>
#include <vector>

namespace apsi::detail {

struct LstsqResult {
    std::vector<double> x;
    double relative_residual = 0.0;  ///< ||A x - b|| / ||b||, 0 when b == 0
    double condition = 0.0;          ///< sigma_max / sigma_min of A
};

/// Solves min ||A x - b||_2 for A (m x n, row-major, m >= n).
/// Throws std::invalid_argument on shape errors.
LstsqResult lstsq(std::vector<double> a, std::vector<double> b, std::size_t m,
                  std::size_t n);

}  // namespace apsi::detail
