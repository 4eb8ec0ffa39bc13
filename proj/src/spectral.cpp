// SPDX-License-Identifier: Apache-2.0
#include "apsi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apsi/errors.hpp"
#include "apsi/optimize.hpp"

namespace apsi {

void AnalysisConfig::validate() const {
    if (!(band_lo >= 0.0) || !(band_lo < band_hi))
        throw std::invalid_argument("analysis band must satisfy 0 <= lo < hi");
    if (!(energy_threshold > 0.0) || !(energy_threshold < 1.0))
        throw std::invalid_argument("energy threshold must be in (0, 1)");
    if (!(refine_tolerance > 0.0))
        throw std::invalid_argument("refine tolerance must be positive");
    if (max_refine_iterations < 1)
        throw std::invalid_argument("max refine iterations must be >= 1");
}

std::complex<double> fourier_exponent(const SampledRecord& record, double omega) {
    if (record.size() < 2) throw std::invalid_argument("record needs at least 2 samples");
    if (!(omega >= 0.0)) throw std::invalid_argument("omega must be non-negative");
    if (!(omega < pi / record.dt))
        throw std::invalid_argument("omega out of band (Nyquist limit pi/dt)");
    if (omega == 0.0) return {bohr_mean(record), 0.0};

    const std::size_t n = record.size();
    const auto& x = record.samples;
    // Trapezoidal (1/T) * integral of x(t) exp(-j w t) dt, with the phasor
    // advanced by a per-sample rotation.
    std::complex<double> w = std::polar(1.0, -omega * record.t0);
    const std::complex<double> step = std::polar(1.0, -omega * record.dt);
    std::complex<double> acc = 0.5 * x[0] * w;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        w *= step;
        acc += x[i] * w;
    }
    w *= step;
    acc += 0.5 * x[n - 1] * w;
    return acc * (record.dt / record.duration());
}

SpectrumEstimate evaluate_grid(const SampledRecord& record, const AnalysisConfig& config) {
    config.validate();
    if (record.size() < 2) throw std::invalid_argument("record needs at least 2 samples");
    const double span = record.duration();
    const double step = 2.0 * pi / span;
    if (!(config.band_hi < pi / record.dt))
        throw std::invalid_argument("analysis band exceeds the Nyquist limit");

    SpectrumEstimate spectrum;
    spectrum.record_span = span;
    spectrum.resolution = step;
    const auto count = static_cast<std::size_t>(
        std::floor((config.band_hi - config.band_lo) / step * (1.0 + 1e-12))) + 1;
    if (count < 1) throw std::invalid_argument("analysis band contains no grid point");
    spectrum.lines.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double omega = config.band_lo + static_cast<double>(i) * step;
        spectrum.lines.push_back({omega, fourier_exponent(record, omega)});
    }
    return spectrum;
}

SpectrumEstimate scan_spectrum(const SampledRecord& record, const AnalysisConfig& config) {
    SpectrumEstimate grid = evaluate_grid(record, config);
    SpectrumEstimate candidates;
    candidates.record_span = grid.record_span;
    candidates.resolution = grid.resolution;
    for (std::size_t i = 1; i + 1 < grid.lines.size(); ++i) {
        const double e = std::norm(grid.lines[i].exponent);
        if (e > std::norm(grid.lines[i - 1].exponent) &&
            e > std::norm(grid.lines[i + 1].exponent))
            candidates.lines.push_back(grid.lines[i]);
    }
    return candidates;
}

double refine_peak(const SampledRecord& record, double seed_omega,
                   const AnalysisConfig& config) {
    config.validate();
    const double step = 2.0 * pi / record.duration();
    const double lo = seed_omega - step;
    const double hi = seed_omega + step;
    const double slack = 1e-9 * step;
    if (lo < config.band_lo - slack || hi > config.band_hi + slack)
        throw std::invalid_argument("refinement bracket leaves the analysis band");

    auto energy = [&](double omega) { return std::norm(fourier_exponent(record, omega)); };

    const double center = energy(seed_omega);
    if (energy(lo) > center && energy(hi) > center)
        throw refinement_error("bracket around the grid maximum is not unimodal",
                               seed_omega);

    const GoldenSectionResult best = golden_section_maximize(
        energy, lo, hi, config.refine_tolerance, config.max_refine_iterations);
    return best.value >= center ? best.x : seed_omega;
}

ExtractionResult extract_frequency_set(const SampledRecord& record,
                                       const AnalysisConfig& config) {
    const SpectrumEstimate candidates = scan_spectrum(record, config);
    const double resolution = candidates.resolution;

    std::vector<SpectralLine> refined;
    std::vector<std::string> warnings;
    refined.reserve(candidates.lines.size());
    for (const auto& line : candidates.lines) {
        double omega = line.omega;
        try {
            omega = refine_peak(record, line.omega, config);
        } catch (const refinement_error& e) {
            warnings.push_back("refinement failed near omega=" +
                               std::to_string(e.seed_omega()) + "; kept grid estimate");
        }
        refined.push_back({omega, fourier_exponent(record, omega)});
    }

    // Energy threshold relative to the strongest line.
    double peak = 0.0;
    for (const auto& line : refined) peak = std::max(peak, std::norm(line.exponent));
    std::erase_if(refined, [&](const SpectralLine& line) {
        return std::norm(line.exponent) < config.energy_threshold * peak;
    });

    std::sort(refined.begin(), refined.end(),
              [](const SpectralLine& a, const SpectralLine& b) { return a.omega < b.omega; });

    // Merge refined lines closer than 2 * resolution, keeping higher energy.
    std::vector<SpectralLine> merged;
    for (const auto& line : refined) {
        if (!merged.empty() && line.omega - merged.back().omega < 2.0 * resolution) {
            if (std::norm(line.exponent) > std::norm(merged.back().exponent))
                merged.back() = line;
        } else {
            merged.push_back(line);
        }
    }

    // Sidelobe mask: beats of the rectangular-window leakage tails of two
    // strong lines form real local maxima that pass any relative
    // threshold.  A line is kept only if it exceeds the combined
    // finite-span leakage envelope of the stronger accepted lines at its
    // frequency; below that level it cannot be told from a sidelobe.
    const double span = candidates.record_span;
    auto leakage_kernel = [span](double gap) {
        const double x = 0.5 * gap * span;
        return x == 0.0 ? 1.0 : std::abs(std::sin(x)) / x;
    };
    std::vector<std::size_t> order(merged.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::norm(merged[a].exponent) > std::norm(merged[b].exponent);
    });
    std::vector<bool> keep(merged.size(), false);
    std::vector<std::size_t> accepted;
    for (std::size_t idx : order) {
        double envelope = 0.0;
        for (std::size_t a : accepted)
            envelope += std::abs(merged[a].exponent) *
                        leakage_kernel(std::abs(merged[idx].omega - merged[a].omega));
        if (std::abs(merged[idx].exponent) > 1.25 * envelope) {
            keep[idx] = true;
            accepted.push_back(idx);
        }
    }
    std::vector<SpectralLine> masked;
    masked.reserve(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i)
        if (keep[i]) masked.push_back(merged[i]);

    ExtractionResult result;
    result.spectrum.lines = masked;
    result.spectrum.resolution = resolution;
    result.spectrum.record_span = candidates.record_span;
    std::vector<double> frequencies;
    frequencies.reserve(masked.size());
    for (const auto& line : masked) frequencies.push_back(line.omega);
    result.frequencies = FrequencySet(std::move(frequencies), resolution);
    result.warnings = std::move(warnings);
    return result;
}

}  // namespace apsi
