// SPDX-License-Identifier: Apache-2.0
#include "apsi/channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "apsi/errors.hpp"

namespace apsi {

namespace {

std::complex<double> eval_rational(double gain, const std::vector<double>& denom,
                                   double omega) {
    // sum_k a_k (j*omega)^k; j^k cycles through (1, j, -1, -j).
    std::complex<double> den = 0.0;
    double power = 1.0;
    for (std::size_t k = 0; k < denom.size(); ++k) {
        switch (k % 4) {
            case 0: den += std::complex<double>(denom[k] * power, 0.0); break;
            case 1: den += std::complex<double>(0.0, denom[k] * power); break;
            case 2: den -= std::complex<double>(denom[k] * power, 0.0); break;
            default: den -= std::complex<double>(0.0, denom[k] * power); break;
        }
        power *= omega;
    }
    return gain / den;
}

FrequencySet truth_set(const APSignal& signal, double delta) {
    std::vector<double> freqs;
    freqs.reserve(signal.size());
    for (const auto& c : signal.components()) freqs.push_back(c.omega);
    return FrequencySet(std::move(freqs), delta);
}

// Uniform in [0, 1) from the raw generator, stable across platforms.
double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * u01(rng);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

}  // namespace

ChannelResponse ChannelResponse::identity() {
    return rational(1.0, {1.0}, "identity");
}

ChannelResponse ChannelResponse::rational(double gain, std::vector<double> denominator,
                                          std::string description) {
    if (denominator.empty())
        throw std::invalid_argument("rational channel needs denominator coefficients");
    bool all_zero = true;
    for (double a : denominator)
        if (a != 0.0) all_zero = false;
    if (all_zero) throw std::invalid_argument("denominator must not be identically zero");

    ChannelResponse channel;
    channel.gain_ = gain;
    channel.denominator_ = std::move(denominator);
    channel.description_ = std::move(description);
    const double g = channel.gain_;
    const std::vector<double>& den = channel.denominator_;
    channel.evaluate_ = [g, den](double omega) { return eval_rational(g, den, omega); };
    return channel;
}

ChannelResponse ChannelResponse::custom(std::function<std::complex<double>(double)> evaluate,
                                        std::string description) {
    if (!evaluate) throw std::invalid_argument("custom channel needs an evaluator");
    ChannelResponse channel;
    channel.evaluate_ = std::move(evaluate);
    channel.description_ = std::move(description);
    return channel;
}

std::complex<double> ChannelResponse::operator()(double omega) const {
    if (!evaluate_) throw std::logic_error("channel response not initialized");
    return evaluate_(omega);
}

APSignal apply_channel(const APSignal& signal, const ChannelResponse& channel) {
    std::vector<HarmonicComponent> out;
    out.reserve(signal.size());
    for (const auto& c : signal.components()) {
        const std::complex<double> k = channel(c.omega);
        if (c.omega == 0.0) {
            // DC gain is real for real channels; keep the signed amplitude.
            const double amp = c.amplitude * k.real();
            if (amp != 0.0) out.push_back({0.0, amp, 0.0});
            continue;
        }
        const double mag = std::abs(k);
        if (mag == 0.0) continue;
        out.push_back(make_component(c.omega, c.amplitude * mag,
                                     c.phase + std::arg(k)));
    }
    return APSignal(std::move(out));
}

void ScenarioSpec::validate() const {
    if (inputs < 1 || outputs < 1)
        throw std::invalid_argument("scenario needs at least one input and one output");
    if (lines_per_input < 1)
        throw std::invalid_argument("scenario needs at least one line per input");
    if (link_lines < 0 || noise_lines_per_input < 0 || noise_lines_per_output < 0)
        throw std::invalid_argument("line counts must be non-negative");
    if (!(band_lo > 0.0) || !(band_lo < band_hi))
        throw std::invalid_argument("scenario band must satisfy 0 < lo < hi");
    if (!(amplitude_lo > 0.0) || !(amplitude_lo <= amplitude_hi) ||
        !(noise_amplitude_lo > 0.0) || !(noise_amplitude_lo <= noise_amplitude_hi))
        throw std::invalid_argument("amplitude ranges must be positive and ordered");
    if (channel_order < 0) throw std::invalid_argument("channel order must be >= 0");
    if (!(planned_duration > 0.0))
        throw std::invalid_argument("planned duration must be positive");
}

MimoScenario::MimoScenario(std::vector<APSignal> inputs, APSignal link,
                           std::vector<APSignal> input_noises,
                           std::vector<std::vector<ChannelResponse>> channels,
                           std::vector<APSignal> output_noises, double planned_duration)
    : inputs_(std::move(inputs)),
      link_(std::move(link)),
      input_noises_(std::move(input_noises)),
      channels_(std::move(channels)),
      output_noises_(std::move(output_noises)),
      planned_duration_(planned_duration) {
    if (!(planned_duration_ > 0.0))
        throw std::invalid_argument("planned duration must be positive");
    if (inputs_.empty()) throw std::invalid_argument("scenario needs at least one input");
    if (output_noises_.empty())
        throw std::invalid_argument("scenario needs at least one output");
    if (input_noises_.size() != inputs_.size())
        throw std::invalid_argument("one noise signal per input required");
    if (channels_.size() != inputs_.size())
        throw std::invalid_argument("channel matrix must have one row per input");
    for (const auto& row : channels_)
        if (row.size() != output_noises_.size())
            throw std::invalid_argument("channel matrix must have one column per output");

    // Every frequency across every constituent set must keep the 4*delta gap.
    const double min_gap = 4.0 * delta();
    std::vector<double> all;
    auto collect = [&all](const APSignal& s) {
        for (const auto& c : s.components()) all.push_back(c.omega);
    };
    for (const auto& s : inputs_) collect(s);
    collect(link_);
    for (const auto& s : input_noises_) collect(s);
    for (const auto& s : output_noises_) collect(s);
    std::sort(all.begin(), all.end());
    for (std::size_t i = 1; i < all.size(); ++i)
        if (all[i] - all[i - 1] < min_gap * (1.0 - 1e-12))
            throw std::invalid_argument(
                "scenario frequency sets are closer than 4*delta");

    const double d = delta();
    truth_inputs_.reserve(inputs_.size());
    for (const auto& s : inputs_) truth_inputs_.push_back(truth_set(s, d));
    truth_link_ = link_.empty() ? FrequencySet(d) : truth_set(link_, d);
    truth_input_noises_.reserve(input_noises_.size());
    for (const auto& s : input_noises_) truth_input_noises_.push_back(truth_set(s, d));
    truth_output_noises_.reserve(output_noises_.size());
    for (const auto& s : output_noises_) truth_output_noises_.push_back(truth_set(s, d));
}

const ChannelResponse& MimoScenario::channel(int l, int q) const {
    if (l < 0 || l >= input_count() || q < 0 || q >= output_count())
        throw std::out_of_range("channel index out of range");
    return channels_[static_cast<std::size_t>(l)][static_cast<std::size_t>(q)];
}

double MimoScenario::delta() const { return 2.0 * pi / planned_duration_; }

const FrequencySet& MimoScenario::truth_input_set(int l) const {
    if (l < 0 || l >= input_count()) throw std::out_of_range("input index out of range");
    return truth_inputs_[static_cast<std::size_t>(l)];
}

const FrequencySet& MimoScenario::truth_link_set() const { return truth_link_; }

const FrequencySet& MimoScenario::truth_input_noise_set(int l) const {
    if (l < 0 || l >= input_count()) throw std::out_of_range("input index out of range");
    return truth_input_noises_[static_cast<std::size_t>(l)];
}

const FrequencySet& MimoScenario::truth_output_noise_set(int q) const {
    if (q < 0 || q >= output_count()) throw std::out_of_range("output index out of range");
    return truth_output_noises_[static_cast<std::size_t>(q)];
}

SampledRecord realize_input(const MimoScenario& scenario, int l, double duration,
                            double dt) {
    if (l < 0 || l >= scenario.input_count())
        throw std::out_of_range("input index out of range");
    const APSignal observed = APSignal::merged(
        APSignal::merged(scenario.inputs()[static_cast<std::size_t>(l)], scenario.link()),
        scenario.input_noises()[static_cast<std::size_t>(l)]);
    return synthesize(observed, duration, dt);
}

SampledRecord realize_output(const MimoScenario& scenario, int q, double duration,
                             double dt) {
    if (q < 0 || q >= scenario.output_count())
        throw std::out_of_range("output index out of range");

    SampledRecord record =
        synthesize(scenario.output_noises()[static_cast<std::size_t>(q)], duration, dt);

    for (int l = 0; l < scenario.input_count(); ++l) {
        const APSignal driven = APSignal::merged(
            scenario.inputs()[static_cast<std::size_t>(l)], scenario.link());
        const APSignal through = apply_channel(driven, scenario.channel(l, q));
        if (through.empty()) continue;
        const SampledRecord path = synthesize(through, duration, dt);
        for (std::size_t i = 0; i < record.samples.size(); ++i)
            record.samples[i] += path.samples[i];
    }
    return record;
}

MimoScenario random_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    const double delta = 2.0 * pi / spec.planned_duration;
    const double min_gap = 4.0 * delta;

    const int total_lines =
        spec.inputs * (spec.lines_per_input + spec.noise_lines_per_input) +
        spec.link_lines + spec.outputs * spec.noise_lines_per_output;
    if (static_cast<double>(total_lines) * min_gap >= spec.band_hi - spec.band_lo)
        throw generation_error("band [" + std::to_string(spec.band_lo) + ", " +
                               std::to_string(spec.band_hi) +
                               "] cannot host the requested lines at 4*delta spacing");

    std::vector<double> accepted;
    auto draw_frequencies = [&](int count) {
        std::vector<double> freqs;
        int attempts = 0;
        const int max_attempts = 1000 * std::max(total_lines, 1);
        while (static_cast<int>(freqs.size()) < count) {
            if (++attempts > max_attempts)
                throw generation_error("band [" + std::to_string(spec.band_lo) + ", " +
                                       std::to_string(spec.band_hi) +
                                       "] too crowded for 4*delta line spacing");
            const double f = uniform(rng, spec.band_lo, spec.band_hi);
            bool clear = true;
            for (double g : accepted)
                if (std::abs(f - g) < min_gap) { clear = false; break; }
            if (!clear) continue;
            accepted.push_back(f);
            freqs.push_back(f);
        }
        std::sort(freqs.begin(), freqs.end());
        return freqs;
    };

    auto draw_signal = [&](int count, double amp_lo, double amp_hi) {
        const std::vector<double> freqs = draw_frequencies(count);
        std::vector<HarmonicComponent> components;
        components.reserve(freqs.size());
        for (double f : freqs)
            components.push_back(make_component(f, log_uniform(rng, amp_lo, amp_hi),
                                                uniform(rng, -pi, pi)));
        return APSignal(std::move(components));
    };

    std::vector<APSignal> inputs;
    for (int l = 0; l < spec.inputs; ++l)
        inputs.push_back(draw_signal(spec.lines_per_input, spec.amplitude_lo,
                                     spec.amplitude_hi));
    APSignal link = spec.link_lines > 0
                        ? draw_signal(spec.link_lines, spec.amplitude_lo, spec.amplitude_hi)
                        : APSignal();
    std::vector<APSignal> input_noises;
    for (int l = 0; l < spec.inputs; ++l)
        input_noises.push_back(
            spec.noise_lines_per_input > 0
                ? draw_signal(spec.noise_lines_per_input, spec.noise_amplitude_lo,
                              spec.noise_amplitude_hi)
                : APSignal());
    std::vector<APSignal> output_noises;
    for (int q = 0; q < spec.outputs; ++q)
        output_noises.push_back(
            spec.noise_lines_per_output > 0
                ? draw_signal(spec.noise_lines_per_output, spec.noise_amplitude_lo,
                              spec.noise_amplitude_hi)
                : APSignal());

    // Random denominators with coefficient scales chosen so every term
    // contributes near the top of the band; |den| is checked to stay away
    // from zero across the band.
    auto draw_channel = [&](int l, int q) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<double> denom;
            denom.reserve(static_cast<std::size_t>(spec.channel_order) + 1);
            denom.push_back(uniform(rng, 0.7, 1.4));
            double scale = 1.0;
            for (int k = 1; k <= spec.channel_order; ++k) {
                scale /= spec.band_hi;
                denom.push_back(uniform(rng, 0.3, 1.0) * 2.0 * scale);
            }
            ChannelResponse channel = ChannelResponse::rational(
                1.0, denom, "random order-" + std::to_string(spec.channel_order) +
                                " channel " + std::to_string(l + 1) + "->" +
                                std::to_string(q + 1));
            double min_mag = std::abs(channel(spec.band_lo));
            for (int i = 1; i <= 64; ++i) {
                const double omega =
                    spec.band_lo + (spec.band_hi - spec.band_lo) * i / 64.0;
                min_mag = std::min(min_mag, std::abs(channel(omega)));
            }
            if (min_mag > 0.05) return channel;
        }
        throw generation_error("could not draw a channel without a near-zero response");
    };

    std::vector<std::vector<ChannelResponse>> channels(
        static_cast<std::size_t>(spec.inputs));
    for (int l = 0; l < spec.inputs; ++l)
        for (int q = 0; q < spec.outputs; ++q)
            channels[static_cast<std::size_t>(l)].push_back(draw_channel(l, q));

    return MimoScenario(std::move(inputs), std::move(link), std::move(input_noises),
                        std::move(channels), std::move(output_noises),
                        spec.planned_duration);
}

}  // namespace apsi
