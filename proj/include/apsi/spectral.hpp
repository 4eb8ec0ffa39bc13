// SPDX-License-Identifier: Apache-2.0
//
// Fourier-exponent estimation from finite records and extraction of the
// set of harmonic frequencies: grid scan at the record's native
// resolution 2*pi/T, successive refinement of the local maxima, energy
// thresholding and duplicate-line merging.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "apsi/freqset.hpp"
#include "apsi/signal.hpp"

namespace apsi {

/// Parameters for a frequency-analysis pass over one record.
struct AnalysisConfig {
    double band_lo = 0.0;          ///< rad/s, >= 0
    double band_hi = 0.0;          ///< rad/s, > band_lo
    double energy_threshold = 1e-4;    ///< relative to the strongest line, (0, 1)
    double refine_tolerance = 1e-5;    ///< rad/s bracket width at convergence
    int max_refine_iterations = 80;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

struct SpectralLine {
    double omega = 0.0;
    std::complex<double> exponent;  ///< C(omega)
};

/// Spectral lines of one record together with the analysis resolution
/// delta_omega = 2*pi/T it was obtained at.
struct SpectrumEstimate {
    std::vector<SpectralLine> lines;  ///< strictly increasing frequencies
    double resolution = 0.0;          ///< rad/s, == 2*pi/record_span
    double record_span = 0.0;         ///< seconds
};

/// Finite-span Fourier exponent C(omega) = (1/T) * integral of
/// x(t)*exp(-j*omega*t) dt, trapezoidal rule.  For omega == 0 this is the
/// record mean.  Throws std::invalid_argument for omega < 0 or at/beyond
/// the Nyquist limit pi/dt.
std::complex<double> fourier_exponent(const SampledRecord& record, double omega);

/// Exponents on the full analysis grid band_lo, band_lo + d, ..., band_hi
/// with d = 2*pi/T; used for plot emission and as the scan substrate.
SpectrumEstimate evaluate_grid(const SampledRecord& record, const AnalysisConfig& config);

/// Grid points that are strict local maxima of |C|^2: the unrefined
/// candidate lines.  Throws std::invalid_argument when the band contains
/// no grid point.
SpectrumEstimate scan_spectrum(const SampledRecord& record, const AnalysisConfig& config);

/// Sharpens a grid maximum by golden-section search of |C(omega)|^2 over
/// [seed - d, seed + d].  The result never has smaller magnitude than the
/// seed.  Throws refinement_error when the bracket is not unimodal
/// (magnitude at both ends above the center).
double refine_peak(const SampledRecord& record, double seed_omega,
                   const AnalysisConfig& config);

/// Frequency set extracted from one record, with the exponents
/// re-evaluated at the refined frequencies and any non-fatal issues
/// (failed refinements) reported as warnings.
struct ExtractionResult {
    FrequencySet frequencies;   ///< delta == grid resolution
    SpectrumEstimate spectrum;  ///< surviving refined lines
    std::vector<std::string> warnings;
};

/// Full frequency-analysis pass: scan, refine each candidate, drop lines
/// with |C|^2 below energy_threshold * max |C|^2, merge refined lines
/// closer than twice the resolution (keeping the higher-energy one).
ExtractionResult extract_frequency_set(const SampledRecord& record,
                                       const AnalysisConfig& config);

}  // namespace apsi
