// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "apsi/channel.hpp"
#include "apsi/io.hpp"
#include "apsi/signal.hpp"

using namespace apsi;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "apsi_io_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("record CSV round trip preserves the grid and samples") {
    TempDir dir;
    const SampledRecord record =
        synthesize(APSignal({make_component(1.3, 1.0, 0.4)}), 5.0, 0.01, 2.0);
    const fs::path path = dir.path / "record.csv";
    write_record_csv(path, record);
    const SampledRecord loaded = read_record_csv(path);
    REQUIRE(loaded.size() == record.size());
    CHECK(loaded.dt == doctest::Approx(record.dt).epsilon(1e-12));
    CHECK(loaded.t0 == doctest::Approx(record.t0).epsilon(1e-12));
    for (std::size_t i = 0; i < record.size(); ++i)
        CHECK(loaded.samples[i] == record.samples[i]);  // %.17g round-trips exactly
}

TEST_CASE("malformed CSV rows are rejected with the line number") {
    TempDir dir;
    const fs::path path = dir.path / "bad.csv";
    std::ofstream(path) << "t,value\n0.0,1.0\n0.1,nope\n";
    CHECK_THROWS_WITH_AS(read_record_csv(path),
                         doctest::Contains(":3:"), std::runtime_error);

    const fs::path header = dir.path / "header.csv";
    std::ofstream(header) << "time,value\n0.0,1.0\n";
    CHECK_THROWS_AS(read_record_csv(header), std::runtime_error);

    const fs::path jagged = dir.path / "jagged.csv";
    std::ofstream(jagged) << "t,value\n0.0,1.0\n0.1,2.0\n0.3,3.0\n";
    CHECK_THROWS_WITH_AS(read_record_csv(jagged),
                         doctest::Contains("non-uniform"), std::runtime_error);
}

TEST_CASE("signal and set JSON round trips") {
    const APSignal signal({make_component(0.0, -0.5, 0.0),
                           make_component(2.5, 1.5, -0.7)});
    const APSignal signal2 = json(signal).get<APSignal>();
    REQUIRE(signal2.size() == 2);
    CHECK(signal2.components()[0].amplitude == -0.5);
    CHECK(signal2.components()[1].omega == 2.5);

    const FrequencySet set({1.0, 2.0, 3.5}, 0.05);
    const FrequencySet set2 = json(set).get<FrequencySet>();
    CHECK(set2.delta() == 0.05);
    CHECK(set2.frequencies() == set.frequencies());

    OdeModel model;
    model.order = 2;
    model.coefficients = {1.0, 0.5, 0.25};
    model.residual = 1e-9;
    const OdeModel model2 = json(model).get<OdeModel>();
    CHECK(model2.order == 2);
    CHECK(model2.coefficients == model.coefficients);
    CHECK(model2.converged);
}

TEST_CASE("scenario JSON keeps signals, channels and truth sets") {
    ScenarioSpec spec;
    spec.band_hi = 10.0;
    spec.channel_order = 2;
    const MimoScenario scenario = random_scenario(spec, 21);
    const json j = scenario_to_json(scenario);
    const MimoScenario loaded = scenario_from_json(j);

    REQUIRE(loaded.input_count() == scenario.input_count());
    REQUIRE(loaded.output_count() == scenario.output_count());
    for (int l = 0; l < scenario.input_count(); ++l) {
        CHECK(set_equal(loaded.truth_input_set(l), scenario.truth_input_set(l)));
        const auto& a = scenario.inputs()[static_cast<std::size_t>(l)].components();
        const auto& b = loaded.inputs()[static_cast<std::size_t>(l)].components();
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].omega == b[i].omega);
    }
    CHECK(set_equal(loaded.truth_link_set(), scenario.truth_link_set()));
    for (int l = 0; l < scenario.input_count(); ++l)
        for (int q = 0; q < scenario.output_count(); ++q) {
            CHECK(loaded.channel(l, q).denominator() ==
                  scenario.channel(l, q).denominator());
            CHECK(loaded.channel(l, q).gain() == scenario.channel(l, q).gain());
        }

    // Serialization is deterministic for identical scenarios.
    CHECK(j.dump() == scenario_to_json(random_scenario(spec, 21)).dump());
}

TEST_CASE("custom channels refuse to serialize") {
    const ChannelResponse channel =
        ChannelResponse::custom([](double) { return std::complex<double>(1.0, 0.0); },
                                "opaque");
    json j;
    CHECK_THROWS_AS(to_json(j, channel), std::invalid_argument);
}

TEST_CASE("frequency set text form") {
    CHECK(format_frequency_set(FrequencySet({1.5, 3.0}, 0.01)) ==
          "delta=0.01: 1.5,3");
    CHECK(format_frequency_set(FrequencySet(0.02)) == "delta=0.02:");
}

TEST_CASE("spectrum estimate JSON round trip") {
    SpectrumEstimate spectrum;
    spectrum.resolution = 0.1;
    spectrum.record_span = 62.83;
    spectrum.lines.push_back({1.0, {0.5, -0.25}});
    spectrum.lines.push_back({2.5, {0.1, 0.2}});
    const SpectrumEstimate loaded = json(spectrum).get<SpectrumEstimate>();
    CHECK(loaded.resolution == spectrum.resolution);
    CHECK(loaded.record_span == spectrum.record_span);
    REQUIRE(loaded.lines.size() == 2);
    CHECK(loaded.lines[1].exponent == spectrum.lines[1].exponent);
}

TEST_CASE("spectrum and frf CSV headers") {
    TempDir dir;
    SpectrumEstimate spectrum;
    spectrum.resolution = 0.1;
    spectrum.record_span = 62.8;
    spectrum.lines.push_back({1.0, {0.5, -0.25}});
    const fs::path spath = dir.path / "spectrum.csv";
    write_spectrum_csv(spath, spectrum);
    std::ifstream sin(spath);
    std::string line;
    std::getline(sin, line);
    CHECK(line == "omega,re,im,magnitude");

    FrequencyResponse frf;
    frf.points.push_back({2.0, {1.0, 1.0}});
    const fs::path fpath = dir.path / "frf.csv";
    write_frf_csv(fpath, frf);
    std::ifstream fin(fpath);
    std::getline(fin, line);
    CHECK(line == "omega,re,im,magnitude,phase");
    std::getline(fin, line);
    CHECK(line.find("2,1,1,1.414") != std::string::npos);
}
