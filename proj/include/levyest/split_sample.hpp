// SPDX-License-Identifier: MIT
//
// Observation container: 2n low-frequency increments split into the half used
// for the empirical characteristic function and the half used for its
// empirical derivative. The two halves are disjoint by construction, which is
// what makes the plug-in estimator's numerator and denominator independent.

#ifndef LEVYEST_SPLIT_SAMPLE_HPP
#define LEVYEST_SPLIT_SAMPLE_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace levyest {

struct SplitSample {
    std::vector<double> ecfHalf;   // increments 1..n
    std::vector<double> derivHalf; // increments n+1..2n
    double delta = 1.0;            // observation step

    SplitSample() = default;
    SplitSample(std::vector<double> ecfPart, std::vector<double> derivPart, double step)
        : ecfHalf(std::move(ecfPart)), derivHalf(std::move(derivPart)), delta(step) {
        validate();
    }

    std::size_t n() const { return ecfHalf.size(); }

    void validate() const {
        if (ecfHalf.size() != derivHalf.size())
            throw std::invalid_argument("SplitSample: halves must have equal size");
        if (ecfHalf.empty())
            throw std::invalid_argument("SplitSample: need at least one increment per half");
        if (!(delta > 0.0))
            throw std::invalid_argument("SplitSample: observation step must be positive");
    }
};

} // namespace levyest

#endif // LEVYEST_SPLIT_SAMPLE_HPP
