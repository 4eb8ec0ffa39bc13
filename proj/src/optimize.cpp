// SPDX-License-Identifier: Apache-2.0
#include "apsi/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace apsi {

GoldenSectionResult golden_section_maximize(const std::function<double(double)>& f,
                                            double lo, double hi, double tol,
                                            int max_iterations) {
    if (!(lo < hi)) throw std::invalid_argument("golden section needs lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);

    GoldenSectionResult result;
    result.x = fc > fd ? c : d;
    result.value = fc > fd ? fc : fd;

    int iter = 0;
    while (iter < max_iterations && (b - a) > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        ++iter;
        if (fc > result.value) { result.value = fc; result.x = c; }
        if (fd > result.value) { result.value = fd; result.x = d; }
    }

    result.iterations = iter;
    result.converged = (b - a) <= tol;
    return result;
}

}  // namespace apsi
