// SPDX-License-Identifier: Apache-2.0
#include "apsi/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "apsi/errors.hpp"
#include "apsi/spectral.hpp"
#include "linalg.hpp"

namespace apsi {

namespace {

constexpr double condition_limit = 1e12;

// (j*omega)^k as (real, imag) scaled powers; j^k cycles (1, j, -1, -j).
void jw_power(double omega, int k, double& re, double& im) {
    const double mag = std::pow(omega, k);
    switch (k % 4) {
        case 0: re = mag; im = 0.0; break;
        case 1: re = 0.0; im = mag; break;
        case 2: re = -mag; im = 0.0; break;
        default: re = 0.0; im = -mag; break;
    }
}

}  // namespace

FrequencySet filter_exact_frequencies(const FrequencySet& input_set,
                                      const FrequencySet& output_set,
                                      const FrequencySet& link_set) {
    const FrequencySet conditional =
        link_set.empty() ? input_set : set_difference(input_set, link_set);
    return set_intersect(conditional, output_set);
}

FrfEstimate estimate_frf(const SampledRecord& input_record,
                         const SampledRecord& output_record,
                         const FrequencySet& exact_set, double floor_rel) {
    if (input_record.size() != output_record.size() ||
        input_record.dt != output_record.dt)
        throw std::invalid_argument("input and output records must share dt and length");
    if (!(floor_rel > 0.0)) throw std::invalid_argument("floor must be positive");
    if (exact_set.empty())
        throw estimation_error("no exact frequencies to estimate the response at");

    std::vector<std::complex<double>> c_in, c_out;
    c_in.reserve(exact_set.size());
    c_out.reserve(exact_set.size());
    double strongest = 0.0;
    for (double omega : exact_set.frequencies()) {
        c_in.push_back(fourier_exponent(input_record, omega));
        c_out.push_back(fourier_exponent(output_record, omega));
        strongest = std::max(strongest, std::abs(c_in.back()));
    }

    FrfEstimate estimate;
    const double floor_abs = floor_rel * strongest;
    for (std::size_t i = 0; i < c_in.size(); ++i) {
        const double omega = exact_set.frequencies()[i];
        if (std::abs(c_in[i]) < floor_abs || c_in[i] == 0.0) {
            estimate.skipped.push_back(omega);
            continue;
        }
        estimate.response.points.push_back({omega, c_out[i] / c_in[i]});
    }
    if (estimate.response.empty())
        throw estimation_error("every input exponent fell below the floor");
    return estimate;
}

OdeModel fit_ode(const FrequencyResponse& frf, int order) {
    if (order < 1) throw std::invalid_argument("model order must be >= 1");
    const std::size_t points = frf.size();
    const auto unknowns = static_cast<std::size_t>(order) + 1;
    if (2 * points < unknowns)
        throw std::invalid_argument("frequency response has too few points for the order");

    double log_sum = 0.0;
    std::size_t positive = 0;
    for (const auto& p : frf.points) {
        if (!(std::abs(p.value) > 0.0))
            throw std::invalid_argument("frequency response must be nonzero everywhere");
        if (p.omega > 0.0) {
            log_sum += std::log(p.omega);
            ++positive;
        } else if (p.omega < 0.0) {
            throw std::invalid_argument("frequencies must be non-negative");
        }
    }
    // Unit geometric mean of the frequencies fights Vandermonde-style
    // conditioning; coefficients are unscaled on return.
    const double scale = positive > 0 ? std::exp(log_sum / static_cast<double>(positive))
                                      : 1.0;

    // Each point contributes its equation pair weighted by |W(jw_i)| so a
    // relative response error costs the same at every frequency; without
    // this the large |1/W| rows of a high-order channel dominate the fit.
    std::vector<double> a(2 * points * unknowns, 0.0);
    std::vector<double> b(2 * points, 0.0);
    for (std::size_t i = 0; i < points; ++i) {
        const double omega_scaled = frf.points[i].omega / scale;
        const double weight = std::abs(frf.points[i].value);
        const std::complex<double> rhs = weight / frf.points[i].value;
        for (std::size_t k = 0; k < unknowns; ++k) {
            double re = 0.0, im = 0.0;
            jw_power(omega_scaled, static_cast<int>(k), re, im);
            a[(2 * i) * unknowns + k] = weight * re;
            a[(2 * i + 1) * unknowns + k] = weight * im;
        }
        b[2 * i] = rhs.real();
        b[2 * i + 1] = rhs.imag();
    }

    detail::LstsqResult solution =
        detail::lstsq(std::move(a), std::move(b), 2 * points, unknowns);
    if (!(solution.condition < condition_limit))
        throw fit_error("normal system condition estimate " +
                            std::to_string(solution.condition) + " exceeds limit",
                        solution.condition);

    OdeModel model;
    model.order = order;
    model.coefficients.resize(unknowns);
    double power = 1.0;
    for (std::size_t k = 0; k < unknowns; ++k) {
        model.coefficients[k] = solution.x[k] / power;
        power *= scale;
    }
    model.residual = solution.relative_residual;
    model.converged = true;
    return model;
}

OdeModel select_order(const FrequencyResponse& frf, int max_order, double residual_tol) {
    if (max_order < 1) throw std::invalid_argument("max order must be >= 1");
    if (!(residual_tol > 0.0)) throw std::invalid_argument("residual tolerance must be positive");
    if (2 * frf.size() < static_cast<std::size_t>(max_order) + 1)
        throw std::invalid_argument("frequency response has too few points for max order");

    OdeModel best;
    best.residual = std::numeric_limits<double>::infinity();
    bool any_fit = false;
    for (int order = 1; order <= max_order; ++order) {
        OdeModel model;
        try {
            model = fit_ode(frf, order);
        } catch (const fit_error&) {
            if (order == max_order && !any_fit) throw;
            continue;
        }
        any_fit = true;
        if (model.residual < residual_tol) return model;
        if (model.residual < best.residual) best = model;
    }
    if (!any_fit) throw fit_error("no order could be fitted", 0.0);
    best.converged = false;
    return best;
}

}  // namespace apsi
