// SPDX-License-Identifier: Apache-2.0
#include "apsi/freqset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "apsi/errors.hpp"

namespace apsi {

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("frequency set resolution must be positive");
}

// Sort and collapse chains of members less than 2*delta apart to their
// means.  Collapsed cluster means stay >= 2*delta apart because the
// cluster boundaries do.
std::vector<double> canonicalize(std::vector<double> freqs, double delta) {
    std::sort(freqs.begin(), freqs.end());
    std::vector<double> out;
    out.reserve(freqs.size());
    std::size_t i = 0;
    while (i < freqs.size()) {
        std::size_t j = i + 1;
        double sum = freqs[i];
        while (j < freqs.size() && freqs[j] - freqs[j - 1] < 2.0 * delta) {
            sum += freqs[j];
            ++j;
        }
        out.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    return out;
}

}  // namespace

FrequencySet::FrequencySet(double delta) : delta_(delta) { check_delta(delta); }

FrequencySet::FrequencySet(std::vector<double> frequencies, double delta)
    : frequencies_(std::move(frequencies)), delta_(delta) {
    check_delta(delta);
    double prev = -1.0;
    for (double f : frequencies_) {
        if (!(f >= 0.0) || !std::isfinite(f))
            throw std::invalid_argument("frequencies must be non-negative and finite");
        if (prev >= 0.0 && !(f - prev >= 2.0 * delta_))
            throw std::invalid_argument(
                "set is not canonical: adjacent members closer than 2*delta");
        prev = f;
    }
}

FrequencySet FrequencySet::canonical(std::vector<double> frequencies, double delta) {
    check_delta(delta);
    for (double f : frequencies)
        if (!(f >= 0.0) || !std::isfinite(f))
            throw std::invalid_argument("frequencies must be non-negative and finite");
    return FrequencySet(canonicalize(std::move(frequencies), delta), delta);
}

FrequencySet set_union(const FrequencySet& a, const FrequencySet& b) {
    const double delta = std::max(a.delta(), b.delta());
    std::vector<double> all = a.frequencies();
    all.insert(all.end(), b.frequencies().begin(), b.frequencies().end());
    return FrequencySet::canonical(std::move(all), delta);
}

FrequencySet set_intersect(const FrequencySet& a, const FrequencySet& b) {
    const double delta = std::max(a.delta(), b.delta());
    const auto& fa = a.frequencies();
    const auto& fb = b.frequencies();
    std::vector<double> matched;
    std::size_t i = 0, j = 0;
    while (i < fa.size() && j < fb.size()) {
        if (std::abs(fa[i] - fb[j]) < 2.0 * delta) {
            matched.push_back(0.5 * (fa[i] + fb[j]));
            ++i;
            ++j;
        } else if (fa[i] < fb[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return FrequencySet::canonical(std::move(matched), delta);
}

FrequencySet set_difference(const FrequencySet& a, const FrequencySet& b) {
    const double delta = std::max(a.delta(), b.delta());
    const auto& fb = b.frequencies();
    std::vector<double> kept;
    for (double f : a.frequencies()) {
        auto it = std::lower_bound(fb.begin(), fb.end(), f);
        const bool near_right = it != fb.end() && std::abs(*it - f) < 2.0 * delta;
        const bool near_left = it != fb.begin() && std::abs(*(it - 1) - f) < 2.0 * delta;
        if (!near_right && !near_left) kept.push_back(f);
    }
    return FrequencySet::canonical(std::move(kept), delta);
}

bool set_equal(const FrequencySet& a, const FrequencySet& b) {
    if (a.size() != b.size()) return false;
    const double tol = 2.0 * std::max(a.delta(), b.delta());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(std::abs(a.frequencies()[i] - b.frequencies()[i]) < tol)) return false;
    return true;
}

Decorrelation decorrelate(const std::vector<FrequencySet>& inputs) {
    if (inputs.size() < 2)
        throw std::invalid_argument("decorrelation needs at least 2 input sets");

    FrequencySet link = inputs[0];
    for (std::size_t i = 1; i < inputs.size(); ++i) link = set_intersect(link, inputs[i]);

    Decorrelation result;
    result.link = link;
    result.conditional.reserve(inputs.size());
    for (const auto& set : inputs) result.conditional.push_back(set_difference(set, link));

    // The conditional sets must be pairwise uncorrelated.
    std::vector<double> residual;
    for (std::size_t i = 0; i < result.conditional.size(); ++i)
        for (std::size_t j = i + 1; j < result.conditional.size(); ++j) {
            const FrequencySet overlap =
                set_intersect(result.conditional[i], result.conditional[j]);
            residual.insert(residual.end(), overlap.frequencies().begin(),
                            overlap.frequencies().end());
        }
    if (!residual.empty()) {
        std::sort(residual.begin(), residual.end());
        std::string what = "conditional sets still share frequencies:";
        for (double f : residual) what += " " + std::to_string(f);
        throw decorrelation_error(what, std::move(residual));
    }
    return result;
}

}  // namespace apsi
