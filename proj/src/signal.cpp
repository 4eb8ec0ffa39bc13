// SPDX-License-Identifier: Apache-2.0
#include "apsi/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace apsi {

namespace {

// Trapezoidal integral of the samples over the record span.
double trapezoid(const std::vector<double>& x, double dt) {
    const std::size_t n = x.size();
    double acc = 0.5 * (x.front() + x.back());
    for (std::size_t i = 1; i + 1 < n; ++i) acc += x[i];
    return acc * dt;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

double normalize_phase(double phase) {
    if (!std::isfinite(phase)) throw std::invalid_argument("phase must be finite");
    double p = std::fmod(phase, 2.0 * pi);
    if (p <= -pi) p += 2.0 * pi;
    if (p > pi) p -= 2.0 * pi;
    return p;
}

HarmonicComponent make_component(double omega, double amplitude, double phase) {
    require(std::isfinite(omega) && std::isfinite(amplitude), "component values must be finite");
    require(omega >= 0.0, "frequency must be non-negative");
    if (omega == 0.0) {
        // DC carries a signed amplitude; its phase is fixed at 0.
        require(phase == 0.0, "DC component must have zero phase");
        return {0.0, amplitude, 0.0};
    }
    require(amplitude >= 0.0, "amplitude must be non-negative");
    return {omega, amplitude, normalize_phase(phase)};
}

APSignal::APSignal(std::vector<HarmonicComponent> components, double min_spacing)
    : components_(std::move(components)) {
    double prev = -1.0;
    for (auto& c : components_) {
        c = make_component(c.omega, c.amplitude, c.phase);
        require(c.omega > prev, "frequencies must be strictly increasing");
        if (min_spacing > 0.0 && prev >= 0.0)
            require(c.omega - prev >= min_spacing,
                    "components closer than the minimum spacing");
        prev = c.omega;
    }
}

double APSignal::min_omega() const {
    for (const auto& c : components_)
        if (c.omega > 0.0) return c.omega;
    return 0.0;
}

double APSignal::max_omega() const {
    return components_.empty() ? 0.0 : components_.back().omega;
}

double APSignal::average_power() const {
    double power = 0.0;
    for (const auto& c : components_) {
        if (c.omega == 0.0)
            power += c.amplitude * c.amplitude;
        else
            power += 0.5 * c.amplitude * c.amplitude;
    }
    return power;
}

double APSignal::evaluate(double t) const {
    double value = 0.0;
    for (const auto& c : components_) value += c.amplitude * std::cos(c.omega * t + c.phase);
    return value;
}

APSignal APSignal::scaled(double c) const {
    require(c >= 0.0, "scale factor must be non-negative");
    std::vector<HarmonicComponent> out = components_;
    for (auto& comp : out) comp.amplitude *= c;
    return APSignal(std::move(out));
}

APSignal APSignal::merged(const APSignal& a, const APSignal& b) {
    std::vector<HarmonicComponent> out;
    out.reserve(a.size() + b.size());
    auto ia = a.components_.begin(), ib = b.components_.begin();
    while (ia != a.components_.end() || ib != b.components_.end()) {
        if (ib == b.components_.end() || (ia != a.components_.end() && ia->omega < ib->omega))
            out.push_back(*ia++);
        else if (ia == a.components_.end() || ib->omega < ia->omega)
            out.push_back(*ib++);
        else
            throw std::invalid_argument("merged signals must have disjoint frequencies");
    }
    return APSignal(std::move(out));
}

SampledRecord synthesize(const APSignal& signal, double duration, double dt, double t0) {
    require(dt > 0.0, "dt must be positive");
    require(duration > 0.0, "duration must be positive");
    const double omega_max = signal.max_omega();
    if (omega_max > 0.0)
        require(dt < pi / omega_max, "dt violates the Nyquist limit for the signal");

    const auto n = static_cast<std::size_t>(std::floor(duration / dt * (1.0 + 1e-12))) + 1;
    SampledRecord record;
    record.dt = dt;
    record.t0 = t0;
    record.samples.resize(n, 0.0);
    if (signal.empty()) return record;
    for (std::size_t i = 0; i < n; ++i)
        record.samples[i] = signal.evaluate(t0 + static_cast<double>(i) * dt);
    return record;
}

double bohr_mean(const SampledRecord& record) {
    require(record.size() >= 2, "record needs at least 2 samples");
    require(record.dt > 0.0, "dt must be positive");
    return trapezoid(record.samples, record.dt) / record.duration();
}

double inner_product(const SampledRecord& a, const SampledRecord& b) {
    require(a.size() >= 2, "records need at least 2 samples");
    require(a.size() == b.size() && a.dt == b.dt,
            "records must share dt and length");
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a.samples[i] * b.samples[i];
    return trapezoid(prod, a.dt) / a.duration();
}

std::vector<double> autocorrelation(const SampledRecord& record,
                                    const std::vector<double>& lags) {
    require(record.size() >= 3, "record too short for autocorrelation");
    const std::size_t n = record.size();
    const double T = record.duration();
    const auto& x = record.samples;

    std::vector<double> result;
    result.reserve(lags.size());
    for (double tau : lags) {
        require(std::abs(tau) < 0.5 * T, "lag must satisfy |tau| < T/2");
        const double steps = std::abs(tau) / record.dt;
        const double rounded = std::round(steps);
        require(std::abs(steps - rounded) <= 1e-6 * std::max(1.0, steps),
                "lag is not a multiple of dt");
        const auto m = static_cast<std::size_t>(rounded);

        // Overlapping span [tau, T]; x(t - tau) * x(t), trapezoidal.
        double acc = 0.5 * (x[0] * x[m] + x[n - 1 - m] * x[n - 1]);
        for (std::size_t i = 1; i + 1 < n - m; ++i) acc += x[i] * x[i + m];
        result.push_back(acc * record.dt / (record.dt * static_cast<double>(n - 1 - m)));
    }
    return result;
}

PowerClass classify_power(const SampledRecord& record) {
    require(record.size() >= 9, "record too short to nest spans");
    const auto& x = record.samples;

    auto prefix_power = [&](std::size_t count) {
        std::vector<double> sq(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(count));
        for (auto& v : sq) v *= v;
        return trapezoid(sq, record.dt) / (record.dt * static_cast<double>(count - 1));
    };

    const std::size_t n = record.size();
    const double p_quarter = prefix_power((n - 1) / 4 + 1);
    const double p_half = prefix_power((n - 1) / 2 + 1);
    const double p_full = prefix_power(n);
    (void)p_quarter;  // evaluability at T/4 is part of the contract

    if (p_full <= 0.0 || p_half <= 0.0) return PowerClass::indeterminate;
    const double ratio = p_full / p_half;
    if (ratio < 0.6) return PowerClass::decaying;
    if (ratio > 0.8) return PowerClass::persistent;
    return PowerClass::indeterminate;
}

}  // namespace apsi
