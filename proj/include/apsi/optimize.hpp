// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace apsi {

struct GoldenSectionResult {
    double x = 0.0;        ///< best abscissa found
    double value = 0.0;    ///< f(x)
    int iterations = 0;
    bool converged = false;  ///< bracket shrank below tol
};

/// Derivative-free maximization of a unimodal f on [lo, hi] by golden
/// section.  Stops when the bracket width drops below tol or after
/// max_iterations.  Returns the best evaluated point.
GoldenSectionResult golden_section_maximize(const std::function<double(double)>& f,
                                            double lo, double hi, double tol,
                                            int max_iterations);

}  // namespace apsi
