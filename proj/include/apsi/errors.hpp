// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace apsi {

/// Peak refinement could not establish a unimodal bracket around a grid
/// maximum.  Carries the seed frequency so callers can fall back to it.
class refinement_error : public std::runtime_error {
public:
    refinement_error(const std::string& what, double seed_omega)
        : std::runtime_error(what), seed_omega_(seed_omega) {}
    double seed_omega() const { return seed_omega_; }

private:
    double seed_omega_;
};

/// Conditional frequency sets still overlap after removing the link set.
class decorrelation_error : public std::runtime_error {
public:
    decorrelation_error(const std::string& what, std::vector<double> residual)
        : std::runtime_error(what), residual_(std::move(residual)) {}
    const std::vector<double>& residual_frequencies() const { return residual_; }

private:
    std::vector<double> residual_;
};

/// Scenario generation could not place the requested spectral lines.
class generation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Frequency-response estimation produced no usable points.
class estimation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Least-squares coefficient fit failed (singular or ill-conditioned system).
class fit_error : public std::runtime_error {
public:
    fit_error(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

}  // namespace apsi
