// SPDX-License-Identifier: Apache-2.0
//
// Signal data model for discrete-spectrum (almost-periodic) analysis:
// harmonic components, synthesis on a uniform grid, time-average
// functionals and the single-realization autocorrelation estimator.
#pragma once

#include <cstddef>
#include <vector>

namespace apsi {

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Wraps an angle into (-pi, pi].
double normalize_phase(double phase);

/// One spectral line.  For omega > 0 the complex exponent is
/// C(omega) = (amplitude/2) * exp(j*phase); the DC line (omega == 0)
/// carries a signed amplitude and phase fixed at 0.
struct HarmonicComponent {
    double omega = 0.0;      ///< angular frequency, rad/s, >= 0
    double amplitude = 0.0;  ///< >= 0 (may be negative for DC only)
    double phase = 0.0;      ///< radians in (-pi, pi], 0 for DC
};

/// Validating factory: normalizes the phase and enforces the component
/// invariants (omega >= 0, amplitude >= 0 unless DC, DC phase == 0).
HarmonicComponent make_component(double omega, double amplitude, double phase);

/// A finite sum of harmonic components,
/// x(t) = sum_k A_k * cos(omega_k * t + phi_k),
/// with strictly increasing frequencies.
class APSignal {
public:
    APSignal() = default;

    /// Throws std::invalid_argument if frequencies are not strictly
    /// increasing, any component is invalid, or two components are closer
    /// than min_spacing (when min_spacing > 0).
    explicit APSignal(std::vector<HarmonicComponent> components,
                      double min_spacing = 0.0);

    const std::vector<HarmonicComponent>& components() const { return components_; }
    bool empty() const { return components_.empty(); }
    std::size_t size() const { return components_.size(); }

    /// Smallest / largest positive frequency; 0.0 when there is none.
    double min_omega() const;
    double max_omega() const;

    /// sum_{omega_k > 0} A_k^2 / 2 + A_dc^2  (Parseval value of M{x^2}).
    double average_power() const;

    /// Exact point evaluation of the component sum.
    double evaluate(double t) const;

    /// Component-wise amplitude scaling by c.
    APSignal scaled(double c) const;

    /// Union of two signals with disjoint frequency supports.
    /// Throws std::invalid_argument on a shared frequency.
    static APSignal merged(const APSignal& a, const APSignal& b);

private:
    std::vector<HarmonicComponent> components_;
};

/// A uniformly sampled finite realization over [t0, t0 + dt*(n-1)].
/// The only observable object in the pipeline.
struct SampledRecord {
    std::vector<double> samples;
    double dt = 0.0;  ///< seconds per sample, > 0
    double t0 = 0.0;  ///< start time, seconds

    std::size_t size() const { return samples.size(); }
    /// Record span T = dt * (n - 1).
    double duration() const {
        return samples.empty() ? 0.0 : dt * static_cast<double>(samples.size() - 1);
    }
};

/// Samples the component sum exactly at t0 + i*dt for i = 0..floor(duration/dt).
/// An empty signal yields an all-zero record.  Throws std::invalid_argument
/// for dt <= 0, duration <= 0, or dt above the signal's Nyquist limit.
SampledRecord synthesize(const APSignal& signal, double duration, double dt,
                         double t0 = 0.0);

/// Finite-span time average (1/T) * integral of x(t) dt, trapezoidal rule.
double bohr_mean(const SampledRecord& record);

/// Time-average inner product (1/T) * integral of a(t)*b(t) dt.
/// Records must share dt and length.
double inner_product(const SampledRecord& a, const SampledRecord& b);

/// Single-realization autocorrelation estimate at the given lags:
/// R(tau) = (1/(T-tau)) * integral over the overlapping span of
/// x(t - tau) * x(t) dt.  Lags must lie on the sample grid (no
/// interpolation) and satisfy |tau| < T/2.
std::vector<double> autocorrelation(const SampledRecord& record,
                                    const std::vector<double>& lags);

/// Behaviour of the average power P(s) = (1/s) * integral of x^2 over
/// nested spans: a finite-energy transient decays like 1/T, a
/// discrete-spectrum signal keeps constant power.
enum class PowerClass { decaying, persistent, indeterminate };

/// Classifies the record by the ratio P(T) / P(T/2): below 0.6 -> decaying,
/// above 0.8 -> persistent, otherwise (or degenerate zero power)
/// indeterminate.  Requires enough samples to evaluate P at T/4, T/2 and T.
PowerClass classify_power(const SampledRecord& record);

}  // namespace apsi
