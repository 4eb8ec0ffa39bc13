// SPDX-License-Identifier: Apache-2.0
//
// Linear time-invariant channels acting on discrete spectra by
// multiplication of Fourier exponents, and the multi-input cross-coupled
// scenario generator used as ground truth for identification tests.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "apsi/freqset.hpp"
#include "apsi/signal.hpp"

namespace apsi {

/// Frequency response K(j*omega) of an LTI channel, evaluated for
/// omega >= 0.  Channels built from ODE coefficients are kept in rational
/// form (gain / sum_k a_k (j*omega)^k) so they can be serialized.
class ChannelResponse {
public:
    ChannelResponse() = default;

    /// K == 1 everywhere.
    static ChannelResponse identity();

    /// K(jw) = gain / sum_k denominator[k] * (jw)^k.
    static ChannelResponse rational(double gain, std::vector<double> denominator,
                                    std::string description = "");

    /// Arbitrary evaluator; not serializable.
    static ChannelResponse custom(std::function<std::complex<double>(double)> evaluate,
                                  std::string description);

    std::complex<double> operator()(double omega) const;

    const std::string& description() const { return description_; }
    bool is_rational() const { return !denominator_.empty(); }
    double gain() const { return gain_; }
    const std::vector<double>& denominator() const { return denominator_; }

private:
    std::function<std::complex<double>(double)> evaluate_;
    std::string description_;
    double gain_ = 1.0;
    std::vector<double> denominator_;  // empty for custom channels
};

/// Spectral multiplication: component (w, A, phi) maps to
/// (w, A*|K(jw)|, phi + arg K(jw)); zero-gain components are dropped.
/// The output support is always a subset of the input support.
APSignal apply_channel(const APSignal& signal, const ChannelResponse& channel);

/// Line counts, bands and draw ranges for random scenario generation.
struct ScenarioSpec {
    int inputs = 2;
    int outputs = 2;
    int lines_per_input = 2;
    int link_lines = 1;
    int noise_lines_per_input = 2;
    int noise_lines_per_output = 2;
    double band_lo = 1.0;   ///< rad/s
    double band_hi = 10.0;  ///< rad/s
    double amplitude_lo = 0.7;        ///< exact-signal + link draw range (log-uniform)
    double amplitude_hi = 1.5;
    double noise_amplitude_lo = 0.3;  ///< input/output noise draw range (log-uniform)
    double noise_amplitude_hi = 0.8;
    int channel_order = 1;
    double planned_duration = 100.0;  ///< seconds; sets the 4*delta line spacing

    void validate() const;
};

/// Multi-input multi-output ground-truth scenario: exact inputs x_l, a
/// shared link signal v added to every input, per-input noises n_l,
/// channel matrix k_lq and per-output noises m_q.  All constituent
/// frequency sets are pairwise separated by at least 4 * (2*pi/planned
/// duration), checked at construction.
class MimoScenario {
public:
    MimoScenario(std::vector<APSignal> inputs, APSignal link,
                 std::vector<APSignal> input_noises,
                 std::vector<std::vector<ChannelResponse>> channels,
                 std::vector<APSignal> output_noises, double planned_duration);

    int input_count() const { return static_cast<int>(inputs_.size()); }
    int output_count() const { return static_cast<int>(output_noises_.size()); }

    const std::vector<APSignal>& inputs() const { return inputs_; }
    const APSignal& link() const { return link_; }
    const std::vector<APSignal>& input_noises() const { return input_noises_; }
    const std::vector<std::vector<ChannelResponse>>& channels() const { return channels_; }
    const ChannelResponse& channel(int l, int q) const;
    const std::vector<APSignal>& output_noises() const { return output_noises_; }

    double planned_duration() const { return planned_duration_; }
    /// Analysis resolution the scenario was planned for: 2*pi/duration.
    double delta() const;

    // Truth bookkeeping, recorded at construction with the planned delta.
    const FrequencySet& truth_input_set(int l) const;        ///< Omega_xl
    const FrequencySet& truth_link_set() const;              ///< Omega_v
    const FrequencySet& truth_input_noise_set(int l) const;  ///< Omega_nl
    const FrequencySet& truth_output_noise_set(int q) const; ///< Omega_mq

private:
    std::vector<APSignal> inputs_;
    APSignal link_;
    std::vector<APSignal> input_noises_;
    std::vector<std::vector<ChannelResponse>> channels_;  // [input][output]
    std::vector<APSignal> output_noises_;
    double planned_duration_ = 0.0;

    std::vector<FrequencySet> truth_inputs_;
    FrequencySet truth_link_;
    std::vector<FrequencySet> truth_input_noises_;
    std::vector<FrequencySet> truth_output_noises_;
};

/// Observed input l: x_l + v + n_l, synthesized exactly.
SampledRecord realize_input(const MimoScenario& scenario, int l, double duration,
                            double dt);

/// Observed output q: sum_l K_lq[x_l + v] + m_q, synthesized exactly per
/// path (no time-domain integration).
SampledRecord realize_output(const MimoScenario& scenario, int q, double duration,
                             double dt);

/// Deterministic seeded generator.  Frequencies are drawn by rejection
/// sampling until every pair across all sets is at least 4*delta apart;
/// amplitudes are log-uniform, phases uniform.  Throws generation_error
/// when the band cannot host the requested lines.
MimoScenario random_scenario(const ScenarioSpec& spec, std::uint64_t seed);

}  // namespace apsi
