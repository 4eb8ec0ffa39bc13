// SPDX-License-Identifier: Apache-2.0
//
// Tolerance-aware algebra on sets of harmonic frequencies.  Two members
// match when they differ by less than twice the resolution delta; matched
// pairs collapse to their arithmetic mean.
#pragma once

#include <cstddef>
#include <vector>

namespace apsi {

/// Sorted set of non-negative frequencies with a resolution delta.
/// Canonical form: strictly increasing, adjacent members >= 2*delta apart.
class FrequencySet {
public:
    FrequencySet() = default;

    /// Empty set with the given resolution.
    explicit FrequencySet(double delta);

    /// Validating constructor; throws std::invalid_argument if the input
    /// is not already canonical.
    FrequencySet(std::vector<double> frequencies, double delta);

    /// Sorts the input and collapses clusters (chains of members less than
    /// 2*delta apart) to their arithmetic means.
    static FrequencySet canonical(std::vector<double> frequencies, double delta);

    const std::vector<double>& frequencies() const { return frequencies_; }
    double delta() const { return delta_; }
    bool empty() const { return frequencies_.empty(); }
    std::size_t size() const { return frequencies_.size(); }

private:
    std::vector<double> frequencies_;
    double delta_ = 0.0;
};

/// Merged set; members of a and b within 2*delta of each other collapse to
/// their mean.  The result resolution is max(delta_a, delta_b).
FrequencySet set_union(const FrequencySet& a, const FrequencySet& b);

/// All pairs (w_a, w_b) with |w_a - w_b| < 2*delta contribute their mean;
/// greedy matching in ascending order, each member matched at most once.
FrequencySet set_intersect(const FrequencySet& a, const FrequencySet& b);

/// Members of a having no member of b within 2*delta.
FrequencySet set_difference(const FrequencySet& a, const FrequencySet& b);

/// True iff same cardinality and i-th members within 2*max(delta) pairwise.
bool set_equal(const FrequencySet& a, const FrequencySet& b);

/// Result of separating coupled input sets: the shared link set and the
/// per-input conditional sets with the link removed.
struct Decorrelation {
    FrequencySet link;
    std::vector<FrequencySet> conditional;
};

/// link = pairwise intersection of all inputs; conditional[i] = inputs[i]
/// minus link.  Verifies that the conditional sets are pairwise disjoint
/// and throws decorrelation_error (listing the residual common
/// frequencies) when they are not.  Requires >= 2 input sets.
Decorrelation decorrelate(const std::vector<FrequencySet>& inputs);

}  // namespace apsi
