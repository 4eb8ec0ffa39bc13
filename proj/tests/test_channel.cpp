// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "apsi/channel.hpp"
#include "apsi/errors.hpp"
#include "apsi/signal.hpp"

using namespace apsi;

namespace {

ScenarioSpec small_spec() {
    ScenarioSpec spec;
    spec.inputs = 2;
    spec.outputs = 2;
    spec.lines_per_input = 2;
    spec.link_lines = 1;
    spec.noise_lines_per_input = 2;
    spec.noise_lines_per_output = 2;
    spec.band_lo = 1.0;
    spec.band_hi = 50.0;
    spec.planned_duration = 100.0;
    return spec;
}

}  // namespace

TEST_CASE("identity channel passes a signal through unchanged") {
    const APSignal signal({make_component(1.0, 0.5, 0.2),
                           make_component(4.0, 2.0, -1.0)});
    const APSignal out = apply_channel(signal, ChannelResponse::identity());
    REQUIRE(out.size() == signal.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out.components()[i].omega == signal.components()[i].omega);
        CHECK(out.components()[i].amplitude ==
              doctest::Approx(signal.components()[i].amplitude));
        CHECK(out.components()[i].phase ==
              doctest::Approx(signal.components()[i].phase));
    }
}

TEST_CASE("double integrator with mass 2 inverts and scales a line") {
    // K(jw) = 1/(2 (jw)^2) = -1/8 at w = 2: gain 1/8, phase pi.
    const ChannelResponse newton = ChannelResponse::rational(1.0, {0.0, 0.0, 2.0});
    const std::complex<double> k = newton(2.0);
    CHECK(k.real() == doctest::Approx(-0.125));
    CHECK(k.imag() == doctest::Approx(0.0));
    const APSignal out =
        apply_channel(APSignal({make_component(2.0, 1.0, 0.0)}), newton);
    REQUIRE(out.size() == 1);
    CHECK(out.components()[0].amplitude == doctest::Approx(0.125));
    CHECK(out.components()[0].phase == doctest::Approx(pi));
}

TEST_CASE("gain and phase compose multiplicatively") {
    const ChannelResponse channel = ChannelResponse::custom(
        [](double) { return std::polar(0.5, -pi / 2.0); }, "0.5 at -90 deg");
    const APSignal out =
        apply_channel(APSignal({make_component(3.0, 2.0, 0.0)}), channel);
    REQUIRE(out.size() == 1);
    CHECK(out.components()[0].amplitude == doctest::Approx(1.0));
    CHECK(out.components()[0].phase == doctest::Approx(-pi / 2.0));
}

TEST_CASE("zero-gain components are dropped, support never grows") {
    const ChannelResponse notch = ChannelResponse::custom(
        [](double omega) {
            return omega > 2.0 ? std::complex<double>(0.0, 0.0)
                               : std::complex<double>(1.0, 0.0);
        },
        "lowpass brick");
    const APSignal signal({make_component(1.0, 1.0, 0.0),
                           make_component(3.0, 1.0, 0.0)});
    const APSignal out = apply_channel(signal, notch);
    REQUIRE(out.size() == 1);
    CHECK(out.components()[0].omega == 1.0);
}

TEST_CASE("rational channel validation") {
    CHECK_THROWS_AS(ChannelResponse::rational(1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(ChannelResponse::rational(1.0, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ChannelResponse()(1.0), std::logic_error);
}

TEST_CASE("scenario realization matches a direct per-sample oracle") {
    const APSignal x1({make_component(1.0, 1.0, 0.1)});
    const APSignal x2({make_component(2.0, 0.8, -0.4)});
    const APSignal link({make_component(3.0, 0.5, 0.9)});
    const APSignal n1({make_component(4.0, 0.3, 0.0)});
    const APSignal n2({make_component(5.0, 0.2, 1.2)});
    const APSignal m1({make_component(6.0, 0.4, -2.0)});
    const APSignal m2({make_component(7.0, 0.25, 2.5)});
    const ChannelResponse k11 = ChannelResponse::rational(2.0, {1.0});
    const ChannelResponse k12 = ChannelResponse::rational(1.0, {1.0, 0.5});
    const ChannelResponse k21 = ChannelResponse::rational(0.5, {1.0});
    const ChannelResponse k22 = ChannelResponse::identity();
    const MimoScenario scenario({x1, x2}, link, {n1, n2}, {{k11, k12}, {k21, k22}},
                                {m1, m2}, 100.0);

    const double duration = 10.0, dt = 0.05;
    const SampledRecord in1 = realize_input(scenario, 0, duration, dt);
    const SampledRecord out1 = realize_output(scenario, 0, duration, dt);

    auto line_at = [](const APSignal& s, const ChannelResponse& k, double t) {
        double acc = 0.0;
        for (const auto& c : s.components()) {
            const std::complex<double> gain = k(c.omega);
            acc += c.amplitude * std::abs(gain) *
                   std::cos(c.omega * t + c.phase + std::arg(gain));
        }
        return acc;
    };
    for (std::size_t i = 0; i < in1.size(); i += 37) {
        const double t = static_cast<double>(i) * dt;
        const double expected_in = x1.evaluate(t) + link.evaluate(t) + n1.evaluate(t);
        CHECK(in1.samples[i] == doctest::Approx(expected_in).epsilon(1e-12));
        const double expected_out = line_at(APSignal::merged(x1, link), k11, t) +
                                    line_at(APSignal::merged(x2, link), k21, t) +
                                    m1.evaluate(t);
        CHECK(out1.samples[i] == doctest::Approx(expected_out).epsilon(1e-12));
    }
}

TEST_CASE("single input through the identity is just the synthesis") {
    const APSignal x({make_component(1.0, 1.0, 0.0), make_component(2.0, 0.5, 0.3)});
    const MimoScenario scenario({x}, APSignal(), {APSignal()},
                                {{ChannelResponse::identity()}}, {APSignal()}, 100.0);
    const SampledRecord out = realize_output(scenario, 0, 20.0, 0.05);
    const SampledRecord direct = synthesize(x, 20.0, 0.05);
    REQUIRE(out.size() == direct.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(out.samples[i] == doctest::Approx(direct.samples[i]).epsilon(1e-12));
    const SampledRecord in = realize_input(scenario, 0, 20.0, 0.05);
    for (std::size_t i = 0; i < in.size(); ++i)
        CHECK(in.samples[i] == doctest::Approx(direct.samples[i]).epsilon(1e-12));
}

TEST_CASE("link-only input realizes as the link synthesis") {
    const APSignal v({make_component(2.0, 0.6, -0.3)});
    const MimoScenario scenario({APSignal()}, v, {APSignal()},
                                {{ChannelResponse::identity()}}, {APSignal()}, 100.0);
    const SampledRecord in = realize_input(scenario, 0, 20.0, 0.05);
    const SampledRecord direct = synthesize(v, 20.0, 0.05);
    for (std::size_t i = 0; i < in.size(); ++i)
        CHECK(in.samples[i] == doctest::Approx(direct.samples[i]).epsilon(1e-12));
}

TEST_CASE("noise-only output equals the noise synthesis") {
    const APSignal x({make_component(1.0, 1.0, 0.0)});
    const APSignal m({make_component(5.0, 0.7, 0.4)});
    const MimoScenario scenario({x}, APSignal(), {APSignal()},
                                {{ChannelResponse::rational(0.0, {1.0})}}, {m}, 100.0);
    const SampledRecord out = realize_output(scenario, 0, 20.0, 0.05);
    const SampledRecord direct = synthesize(m, 20.0, 0.05);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(out.samples[i] == doctest::Approx(direct.samples[i]).epsilon(1e-12));
}

TEST_CASE("scenario construction enforces the 4-delta gap") {
    // planned duration 100 -> delta ~0.0628, min gap ~0.2513.
    const APSignal a({make_component(1.0, 1.0, 0.0)});
    const APSignal b({make_component(1.1, 1.0, 0.0)});  // 0.1 < 0.2513
    CHECK_THROWS_AS(MimoScenario({a}, APSignal(), {b},
                                 {{ChannelResponse::identity()}}, {APSignal()}, 100.0),
                    std::invalid_argument);
    const APSignal c({make_component(2.0, 1.0, 0.0)});
    CHECK_NOTHROW(MimoScenario({a}, APSignal(), {c}, {{ChannelResponse::identity()}},
                               {APSignal()}, 100.0));
}

TEST_CASE("random scenarios are deterministic in the seed") {
    const ScenarioSpec spec = small_spec();
    const MimoScenario s1 = random_scenario(spec, 42);
    const MimoScenario s2 = random_scenario(spec, 42);
    REQUIRE(s1.input_count() == s2.input_count());
    for (int l = 0; l < s1.input_count(); ++l) {
        const auto& c1 = s1.inputs()[static_cast<std::size_t>(l)].components();
        const auto& c2 = s2.inputs()[static_cast<std::size_t>(l)].components();
        REQUIRE(c1.size() == c2.size());
        for (std::size_t i = 0; i < c1.size(); ++i) {
            CHECK(c1[i].omega == c2[i].omega);  // bit-exact
            CHECK(c1[i].amplitude == c2[i].amplitude);
            CHECK(c1[i].phase == c2[i].phase);
        }
    }
    const MimoScenario other = random_scenario(spec, 43);
    CHECK(other.inputs()[0].components()[0].omega !=
          s1.inputs()[0].components()[0].omega);
}

TEST_CASE("random scenarios respect the pairwise gap across all sets") {
    const ScenarioSpec spec = small_spec();
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const MimoScenario scenario = random_scenario(spec, seed);
        std::vector<double> all;
        auto collect = [&all](const APSignal& s) {
            for (const auto& c : s.components()) all.push_back(c.omega);
        };
        for (const auto& s : scenario.inputs()) collect(s);
        collect(scenario.link());
        for (const auto& s : scenario.input_noises()) collect(s);
        for (const auto& s : scenario.output_noises()) collect(s);
        // Brute-force pairwise gap check.
        const double min_gap = 4.0 * scenario.delta();
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                CHECK(std::abs(all[i] - all[j]) >= min_gap);
        CHECK(all.size() == 2 * 2 + 1 + 2 * 2 + 2 * 2);
    }
}

TEST_CASE("zero requested noise lines give empty noise signals") {
    ScenarioSpec spec = small_spec();
    spec.noise_lines_per_input = 0;
    spec.noise_lines_per_output = 0;
    spec.link_lines = 0;
    const MimoScenario scenario = random_scenario(spec, 7);
    for (const auto& s : scenario.input_noises()) CHECK(s.empty());
    for (const auto& s : scenario.output_noises()) CHECK(s.empty());
    CHECK(scenario.link().empty());
}

TEST_CASE("crowded bands fail generation with a named band") {
    ScenarioSpec spec = small_spec();
    spec.band_lo = 1.0;
    spec.band_hi = 1.5;  // 13 lines at gap 0.2513 cannot fit in 0.5 rad/s
    CHECK_THROWS_AS(random_scenario(spec, 1), generation_error);
    try {
        random_scenario(spec, 1);
    } catch (const generation_error& e) {
        CHECK(std::string(e.what()).find("1.5") != std::string::npos);
    }
}

TEST_CASE("realized outputs scale linearly with the noise-free part") {
    ScenarioSpec spec = small_spec();
    spec.noise_lines_per_input = 0;
    spec.noise_lines_per_output = 0;
    const MimoScenario base = random_scenario(spec, 11);
    // Scale every exact input and the link by c; outputs must scale by c.
    const double c = 2.5;
    std::vector<APSignal> scaled_inputs;
    for (const auto& s : base.inputs()) scaled_inputs.push_back(s.scaled(c));
    const MimoScenario scaled(scaled_inputs, base.link().scaled(c),
                              base.input_noises(), base.channels(),
                              base.output_noises(), base.planned_duration());
    const SampledRecord out1 = realize_output(base, 0, 50.0, 0.02);
    const SampledRecord out2 = realize_output(scaled, 0, 50.0, 0.02);
    for (std::size_t i = 0; i < out1.size(); i += 23)
        CHECK(out2.samples[i] == doctest::Approx(c * out1.samples[i]).epsilon(1e-10));
}

TEST_CASE("nyquist violations in realization are rejected") {
    const ScenarioSpec spec = small_spec();
    const MimoScenario scenario = random_scenario(spec, 3);
    CHECK_THROWS_AS(realize_input(scenario, 0, 10.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(realize_output(scenario, 5, 10.0, 0.01), std::out_of_range);
}
