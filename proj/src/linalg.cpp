// SPDX-License-Identifier: Apache-2.0
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace apsi::detail {

namespace {

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(std::vector<double> s, std::size_t n) {
    auto at = [&](std::size_t r, std::size_t c) -> double& { return s[r * n + c]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (at(p, q) == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double skp = at(k, p), skq = at(k, q);
                    at(k, p) = c * skp - sn * skq;
                    at(k, q) = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double spk = at(p, k), sqk = at(q, k);
                    at(p, k) = c * spk - sn * sqk;
                    at(q, k) = sn * spk + c * sqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
    return eig;
}

}  // namespace

LstsqResult lstsq(std::vector<double> a, std::vector<double> b, std::size_t m,
                  std::size_t n) {
    if (n == 0 || m < n) throw std::invalid_argument("lstsq needs m >= n >= 1");
    if (a.size() != m * n || b.size() != m)
        throw std::invalid_argument("lstsq shape mismatch");

    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };

    const double b_norm = std::sqrt(
        std::inner_product(b.begin(), b.end(), b.begin(), 0.0));

    // Householder reduction of A to upper-triangular form, applied to b.
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += at(i, k) * at(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = at(k, k) > 0.0 ? -norm : norm;
        std::vector<double> v(m - k);
        v[0] = at(k, k) - alpha;
        for (std::size_t i = k + 1; i < m; ++i) v[i - k] = at(i, k);
        double v_norm_sq = 0.0;
        for (double value : v) v_norm_sq += value * value;
        if (v_norm_sq == 0.0) continue;

        at(k, k) = alpha;
        for (std::size_t i = k + 1; i < m; ++i) at(i, k) = 0.0;
        for (std::size_t c = k + 1; c < n; ++c) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += v[i - k] * at(i, c);
            const double factor = 2.0 * dot / v_norm_sq;
            for (std::size_t i = k; i < m; ++i) at(i, c) -= factor * v[i - k];
        }
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += v[i - k] * b[i];
        const double factor = 2.0 * dot / v_norm_sq;
        for (std::size_t i = k; i < m; ++i) b[i] -= factor * v[i - k];
    }

    // Singular values of A from R^T R (tiny n, exact enough for a
    // condition estimate).
    std::vector<double> rtr(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            const std::size_t upto = std::min(i, j);
            for (std::size_t k = 0; k <= upto; ++k) acc += at(k, i) * at(k, j);
            rtr[i * n + j] = acc;
        }
    std::vector<double> eig = symmetric_eigenvalues(std::move(rtr), n);
    double eig_max = 0.0, eig_min = std::numeric_limits<double>::infinity();
    for (double e : eig) {
        e = std::max(e, 0.0);
        eig_max = std::max(eig_max, e);
        eig_min = std::min(eig_min, e);
    }

    LstsqResult result;
    result.condition = eig_min > 0.0 ? std::sqrt(eig_max / eig_min)
                                     : std::numeric_limits<double>::infinity();

    result.x.assign(n, 0.0);
    if (std::isfinite(result.condition)) {
        for (std::size_t i = n; i-- > 0;) {
            double acc = b[i];
            for (std::size_t j = i + 1; j < n; ++j) acc -= at(i, j) * result.x[j];
            result.x[i] = acc / at(i, i);
        }
    }

    double residual_sq = 0.0;
    for (std::size_t i = n; i < m; ++i) residual_sq += b[i] * b[i];
    result.relative_residual = b_norm > 0.0 ? std::sqrt(residual_sq) / b_norm : 0.0;
    return result;
}

}  // namespace apsi::detail
