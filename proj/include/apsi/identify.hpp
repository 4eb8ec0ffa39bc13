// SPDX-License-Identifier: Apache-2.0
//
// Identification of LTI channels from observed records: separation of the
// exact-input frequencies from input/output noise by set algebra,
// frequency-response estimation at those frequencies, and recovery of
// ODE coefficients by linear least squares.
#pragma once

#include <complex>
#include <vector>

#include "apsi/freqset.hpp"
#include "apsi/signal.hpp"

namespace apsi {

struct FrfPoint {
    double omega = 0.0;
    std::complex<double> value;  ///< W(j*omega)
};

/// Frequency response sampled at the exact-signal frequencies.
struct FrequencyResponse {
    std::vector<FrfPoint> points;  ///< strictly increasing frequencies

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

/// Ordinary differential equation sum_k a_k y^(k) = x, identified from a
/// frequency response via sum_k a_k (j*omega)^k = 1/W(j*omega).
struct OdeModel {
    int order = 0;
    std::vector<double> coefficients;  ///< a_0 .. a_order
    double residual = 0.0;             ///< relative l2 misfit of the fit
    bool converged = true;             ///< false when no order met the tolerance
};

/// Exact-input frequencies of one channel: the input set with the link
/// removed, intersected with the observed output set.  An empty result is
/// a valid outcome (the channel does not drive this output).
FrequencySet filter_exact_frequencies(const FrequencySet& input_set,
                                      const FrequencySet& output_set,
                                      const FrequencySet& link_set);

/// Frequency response with the input frequencies that had to be skipped
/// because the input exponent fell below the relative floor.
struct FrfEstimate {
    FrequencyResponse response;
    std::vector<double> skipped;
};

/// W(j*w_k) = C_y(w_k) / C_x(w_k) at every frequency of exact_set.
/// Records must share dt and length.  Points where |C_x| is below
/// floor_rel times the strongest input exponent are skipped; when all
/// points are skipped, throws estimation_error.
FrfEstimate estimate_frf(const SampledRecord& input_record,
                         const SampledRecord& output_record,
                         const FrequencySet& exact_set, double floor_rel = 1e-6);

/// Least-squares solution of sum_k a_k (j*w_i)^k = 1/W(j*w_i) stacked as a
/// real system, with frequencies pre-scaled to unit geometric mean for
/// conditioning.  Needs ceil((order+1)/2) points.  Throws fit_error when
/// the condition estimate exceeds 1e12 and std::invalid_argument when any
/// |W| is zero.
OdeModel fit_ode(const FrequencyResponse& frf, int order);

/// Fits orders 1..max_order and returns the smallest whose residual is
/// below residual_tol; otherwise the minimum-residual model flagged
/// unconverged.  Propagates fit_error only if every order fails.
OdeModel select_order(const FrequencyResponse& frf, int max_order,
                      double residual_tol = 1e-3);

}  // namespace apsi
