// SPDX-License-Identifier: Apache-2.0
#include "apsi/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace apsi {

namespace {

std::string num(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

[[noreturn]] void csv_error(const std::filesystem::path& path, std::size_t line,
                            const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void to_json(nlohmann::json& j, const SampledRecord& record) {
    j = nlohmann::json{{"dt", record.dt}, {"t0", record.t0}, {"samples", record.samples}};
}

void from_json(const nlohmann::json& j, SampledRecord& record) {
    record.dt = j.at("dt").get<double>();
    record.t0 = j.value("t0", 0.0);
    record.samples = j.at("samples").get<std::vector<double>>();
    if (!(record.dt > 0.0)) throw std::invalid_argument("record dt must be positive");
}

void to_json(nlohmann::json& j, const HarmonicComponent& component) {
    j = nlohmann::json{{"omega", component.omega},
                       {"amplitude", component.amplitude},
                       {"phase", component.phase}};
}

void from_json(const nlohmann::json& j, HarmonicComponent& component) {
    component = make_component(j.at("omega").get<double>(),
                               j.at("amplitude").get<double>(),
                               j.at("phase").get<double>());
}

void to_json(nlohmann::json& j, const APSignal& signal) {
    j = nlohmann::json{{"components", signal.components()}};
}

void from_json(const nlohmann::json& j, APSignal& signal) {
    signal = APSignal(j.at("components").get<std::vector<HarmonicComponent>>());
}

void to_json(nlohmann::json& j, const FrequencySet& set) {
    j = nlohmann::json{{"delta", set.delta()}, {"frequencies", set.frequencies()}};
}

void from_json(const nlohmann::json& j, FrequencySet& set) {
    set = FrequencySet(j.at("frequencies").get<std::vector<double>>(),
                       j.at("delta").get<double>());
}

void to_json(nlohmann::json& j, const SpectrumEstimate& spectrum) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& line : spectrum.lines)
        lines.push_back({{"omega", line.omega},
                         {"re", line.exponent.real()},
                         {"im", line.exponent.imag()}});
    j = nlohmann::json{{"resolution", spectrum.resolution},
                       {"record_span", spectrum.record_span},
                       {"lines", std::move(lines)}};
}

void from_json(const nlohmann::json& j, SpectrumEstimate& spectrum) {
    spectrum.resolution = j.at("resolution").get<double>();
    spectrum.record_span = j.at("record_span").get<double>();
    spectrum.lines.clear();
    for (const auto& line : j.at("lines"))
        spectrum.lines.push_back(
            {line.at("omega").get<double>(),
             {line.at("re").get<double>(), line.at("im").get<double>()}});
}

void to_json(nlohmann::json& j, const OdeModel& model) {
    j = nlohmann::json{{"order", model.order},
                       {"coefficients", model.coefficients},
                       {"residual", model.residual},
                       {"converged", model.converged}};
}

void from_json(const nlohmann::json& j, OdeModel& model) {
    model.order = j.at("order").get<int>();
    model.coefficients = j.at("coefficients").get<std::vector<double>>();
    model.residual = j.at("residual").get<double>();
    model.converged = j.value("converged", true);
    if (model.order < 1 ||
        model.coefficients.size() != static_cast<std::size_t>(model.order) + 1)
        throw std::invalid_argument("model order and coefficient count disagree");
}

void to_json(nlohmann::json& j, const ChannelResponse& channel) {
    if (!channel.is_rational())
        throw std::invalid_argument("only rational channels are serializable");
    j = nlohmann::json{{"gain", channel.gain()},
                       {"denominator", channel.denominator()},
                       {"description", channel.description()}};
}

void from_json(const nlohmann::json& j, ChannelResponse& channel) {
    channel = ChannelResponse::rational(j.at("gain").get<double>(),
                                        j.at("denominator").get<std::vector<double>>(),
                                        j.value("description", ""));
}

void to_json(nlohmann::json& j, const ScenarioSpec& spec) {
    j = nlohmann::json{{"inputs", spec.inputs},
                       {"outputs", spec.outputs},
                       {"lines_per_input", spec.lines_per_input},
                       {"link_lines", spec.link_lines},
                       {"noise_lines_per_input", spec.noise_lines_per_input},
                       {"noise_lines_per_output", spec.noise_lines_per_output},
                       {"band", {spec.band_lo, spec.band_hi}},
                       {"amplitude_range", {spec.amplitude_lo, spec.amplitude_hi}},
                       {"noise_amplitude_range",
                        {spec.noise_amplitude_lo, spec.noise_amplitude_hi}},
                       {"channel_order", spec.channel_order},
                       {"planned_duration", spec.planned_duration}};
}

void from_json(const nlohmann::json& j, ScenarioSpec& spec) {
    spec.inputs = j.value("inputs", spec.inputs);
    spec.outputs = j.value("outputs", spec.outputs);
    spec.lines_per_input = j.value("lines_per_input", spec.lines_per_input);
    spec.link_lines = j.value("link_lines", spec.link_lines);
    spec.noise_lines_per_input = j.value("noise_lines_per_input", spec.noise_lines_per_input);
    spec.noise_lines_per_output =
        j.value("noise_lines_per_output", spec.noise_lines_per_output);
    if (j.contains("band")) {
        spec.band_lo = j.at("band").at(0).get<double>();
        spec.band_hi = j.at("band").at(1).get<double>();
    }
    if (j.contains("amplitude_range")) {
        spec.amplitude_lo = j.at("amplitude_range").at(0).get<double>();
        spec.amplitude_hi = j.at("amplitude_range").at(1).get<double>();
    }
    if (j.contains("noise_amplitude_range")) {
        spec.noise_amplitude_lo = j.at("noise_amplitude_range").at(0).get<double>();
        spec.noise_amplitude_hi = j.at("noise_amplitude_range").at(1).get<double>();
    }
    spec.channel_order = j.value("channel_order", spec.channel_order);
    spec.planned_duration = j.value("planned_duration", spec.planned_duration);
    spec.validate();
}

nlohmann::json scenario_to_json(const MimoScenario& scenario) {
    nlohmann::json channels = nlohmann::json::array();
    for (const auto& row : scenario.channels()) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const auto& channel : row) jrow.push_back(channel);
        channels.push_back(std::move(jrow));
    }

    nlohmann::json truth_inputs = nlohmann::json::array();
    nlohmann::json truth_input_noises = nlohmann::json::array();
    for (int l = 0; l < scenario.input_count(); ++l) {
        truth_inputs.push_back(scenario.truth_input_set(l));
        truth_input_noises.push_back(scenario.truth_input_noise_set(l));
    }
    nlohmann::json truth_output_noises = nlohmann::json::array();
    for (int q = 0; q < scenario.output_count(); ++q)
        truth_output_noises.push_back(scenario.truth_output_noise_set(q));

    return nlohmann::json{
        {"inputs", scenario.inputs()},
        {"link", scenario.link()},
        {"input_noises", scenario.input_noises()},
        {"channels", std::move(channels)},
        {"output_noises", scenario.output_noises()},
        {"planned_duration", scenario.planned_duration()},
        {"truth",
         {{"inputs", std::move(truth_inputs)},
          {"link", scenario.truth_link_set()},
          {"input_noises", std::move(truth_input_noises)},
          {"output_noises", std::move(truth_output_noises)}}}};
}

MimoScenario scenario_from_json(const nlohmann::json& j) {
    std::vector<std::vector<ChannelResponse>> channels;
    for (const auto& jrow : j.at("channels")) {
        std::vector<ChannelResponse> row;
        for (const auto& jchannel : jrow) row.push_back(jchannel.get<ChannelResponse>());
        channels.push_back(std::move(row));
    }
    return MimoScenario(j.at("inputs").get<std::vector<APSignal>>(),
                        j.at("link").get<APSignal>(),
                        j.at("input_noises").get<std::vector<APSignal>>(),
                        std::move(channels),
                        j.at("output_noises").get<std::vector<APSignal>>(),
                        j.at("planned_duration").get<double>());
}

void write_record_csv(const std::filesystem::path& path, const SampledRecord& record) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "t,value\n";
    for (std::size_t i = 0; i < record.samples.size(); ++i)
        out << num(record.t0 + static_cast<double>(i) * record.dt) << ","
            << num(record.samples[i]) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

SampledRecord read_record_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) csv_error(path, line_no, "empty file");
    if (line == "t,value\r") line.pop_back();
    if (line != "t,value") csv_error(path, line_no, "expected header 't,value'");

    std::vector<double> times, values;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) csv_error(path, line_no, "expected 't,value' row");
        try {
            std::size_t used = 0;
            const double t = std::stod(line.substr(0, comma), &used);
            if (used != comma) csv_error(path, line_no, "malformed time field");
            const std::string rest = line.substr(comma + 1);
            const double v = std::stod(rest, &used);
            if (used != rest.size()) csv_error(path, line_no, "malformed value field");
            times.push_back(t);
            values.push_back(v);
        } catch (const std::invalid_argument&) {
            csv_error(path, line_no, "malformed numeric field");
        } catch (const std::out_of_range&) {
            csv_error(path, line_no, "numeric field out of range");
        }
    }
    if (times.size() < 2) csv_error(path, line_no, "record needs at least 2 samples");

    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) csv_error(path, 3, "time grid must be increasing");
    for (std::size_t i = 2; i < times.size(); ++i) {
        const double step = times[i] - times[i - 1];
        if (std::abs(step - dt) > 1e-6 * dt)
            csv_error(path, i + 2, "non-uniform time grid");
    }

    SampledRecord record;
    record.dt = dt;
    record.t0 = times[0];
    record.samples = std::move(values);
    return record;
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectrumEstimate& spectrum) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "omega,re,im,magnitude\n";
    for (const auto& line : spectrum.lines)
        out << num(line.omega) << "," << num(line.exponent.real()) << ","
            << num(line.exponent.imag()) << "," << num(std::abs(line.exponent)) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_frf_csv(const std::filesystem::path& path, const FrequencyResponse& frf) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "omega,re,im,magnitude,phase\n";
    for (const auto& point : frf.points)
        out << num(point.omega) << "," << num(point.value.real()) << ","
            << num(point.value.imag()) << "," << num(std::abs(point.value)) << ","
            << num(std::arg(point.value)) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string format_frequency_set(const FrequencySet& set) {
    std::string text = "delta=" + num(set.delta()) + ":";
    bool first = true;
    for (double f : set.frequencies()) {
        text += first ? " " : ",";
        text += num(f);
        first = false;
    }
    return text;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    return j;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace apsi
