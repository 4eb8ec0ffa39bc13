// SPDX-License-Identifier: Apache-2.0
//
// File interchange: CSV records for sampled data and JSON for signals,
// frequency sets, spectra, models and scenarios.
#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "apsi/channel.hpp"
#include "apsi/freqset.hpp"
#include "apsi/identify.hpp"
#include "apsi/signal.hpp"
#include "apsi/spectral.hpp"

namespace apsi {

// JSON forms (nlohmann ADL hooks).
// SampledRecord      {dt, t0, samples}
// APSignal           {components: [{omega, amplitude, phase}]}
// FrequencySet       {delta, frequencies}
// SpectrumEstimate   {resolution, record_span, lines: [{omega, re, im}]}
// OdeModel           {order, coefficients, residual, converged}
// ChannelResponse    {gain, denominator, description} (rational only)
void to_json(nlohmann::json& j, const SampledRecord& record);
void from_json(const nlohmann::json& j, SampledRecord& record);
void to_json(nlohmann::json& j, const HarmonicComponent& component);
void from_json(const nlohmann::json& j, HarmonicComponent& component);
void to_json(nlohmann::json& j, const APSignal& signal);
void from_json(const nlohmann::json& j, APSignal& signal);
void to_json(nlohmann::json& j, const FrequencySet& set);
void from_json(const nlohmann::json& j, FrequencySet& set);
void to_json(nlohmann::json& j, const SpectrumEstimate& spectrum);
void from_json(const nlohmann::json& j, SpectrumEstimate& spectrum);
void to_json(nlohmann::json& j, const OdeModel& model);
void from_json(const nlohmann::json& j, OdeModel& model);
void to_json(nlohmann::json& j, const ChannelResponse& channel);
void from_json(const nlohmann::json& j, ChannelResponse& channel);
void to_json(nlohmann::json& j, const ScenarioSpec& spec);
void from_json(const nlohmann::json& j, ScenarioSpec& spec);

nlohmann::json scenario_to_json(const MimoScenario& scenario);
MimoScenario scenario_from_json(const nlohmann::json& j);

/// CSV with header `t,value`, one row per sample.
void write_record_csv(const std::filesystem::path& path, const SampledRecord& record);

/// Parses a record CSV; throws std::runtime_error naming the offending
/// line on a malformed row or a non-uniform time grid.
SampledRecord read_record_csv(const std::filesystem::path& path);

/// CSV with header `omega,re,im,magnitude`.
void write_spectrum_csv(const std::filesystem::path& path, const SpectrumEstimate& spectrum);

/// CSV with header `omega,re,im,magnitude,phase`.
void write_frf_csv(const std::filesystem::path& path, const FrequencyResponse& frf);

/// Text form `delta=<v>: w1,w2,...`.
std::string format_frequency_set(const FrequencySet& set);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace apsi
