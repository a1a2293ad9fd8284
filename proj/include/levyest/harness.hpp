// SPDX-License-Identifier: MIT
//
// Experiment driver: seeded replication-parallel Monte Carlo over a grid of
// sample sizes and cutoffs, with deterministic aggregation (replication i of
// sample size n always uses the substream derived from (seed, n, i), and
// results merge in index order), plus rate fitting and report assembly.
// Reports carry no timing or host information, so a rerun with the same seed
// is byte-identical at any thread count.

#ifndef LEVYEST_HARNESS_HPP
#define LEVYEST_HARNESS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "levyest/config.hpp"
#include "levyest/estimator.hpp"
#include "levyest/quadrature.hpp"

namespace levyest {

// Least-squares slope of log(mse) against log(n). Rejects fewer than 4
// points and nonpositive mse values.
LineFit fit_rate_slope(const std::vector<std::pair<double, double>>& points);

// Accumulated Monte Carlo statistics for one (n, m, inverse-variant) cell.
struct CellStats {
    std::size_t n = 0;
    int m = 0;
    InverseVariant variant = InverseVariant::LogTruncated;
    double mse = 0.0;      // empirical E|thetaHat - theta|^2
    double biasSq = 0.0;   // (mean(thetaHat) - theta)^2
    double variance = 0.0; // empirical Var(thetaHat)
};

// Adaptive-selection statistics for one sample size.
struct AdaptiveStats {
    std::size_t n = 0;
    double adaptiveMse = 0.0;       // E|theta - thetaHat_{mHat}|^2
    int mStar = 0;                  // oracle cutoff
    double oracleMse = 0.0;         // MSE of thetaHat_{m*} (log-truncated)
    double oracleCriterion = 0.0;   // min_m [sup-bias^2 + pen(m)]
    double ratio = 0.0;             // adaptiveMse / oracleCriterion
    std::map<int, std::size_t> mHatHistogram;
};

struct RiskReport {
    std::string modelName, functionalName, kernelName;
    double theta = 0.0;             // ground truth
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    std::vector<CellStats> cells;          // (n, m, variant) lattice
    std::vector<AdaptiveStats> adaptive;   // per n
    LineFit adaptiveSlope;                 // log adaptive MSE vs log n
    LineFit oracleSlope;                   // log oracle MSE vs log n
    LineFit oracleBandwidthSlope;          // log MSE at m*(n) vs log T (Neumann)
    double theoreticalExponent = 0.0;      // effective rate slope over [T1,T2]
    std::string theoreticalRate;           // rate descriptor text
    std::size_t quadratureFailures = 0;    // excluded replications
};

// Full Monte Carlo experiment per the configuration. Per-replication
// quadrature failures are excluded and counted; more than 1% of the total
// aborts with QuadratureError.
RiskReport run_experiment(const ExperimentConfig& cfg);

// Writes risk_surface.csv, mhat_histogram.csv, slopes.csv and summary.json
// into cfg.outDir. Returns the list of paths written.
std::vector<std::string> write_report(const RiskReport& report,
                                      const ExperimentConfig& cfg);

// Rate check: theoretical table cell vs fitted oracle-bandwidth slope.
struct RateCheck {
    RateSpec spec;
    std::string rateDescription;
    double theoreticalSlope = 0.0; // effective log-log slope over [Tmin, Tmax]
    LineFit fittedSlope;           // from the Monte Carlo MSE at m*(n)
    std::vector<std::pair<double, double>> points; // (T, mse at m*)
};

RateCheck run_rate_check(const ExperimentConfig& cfg);
std::vector<std::string> write_rate_check(const RateCheck& check,
                                          const ExperimentConfig& cfg);

// Oracle-inequality check at fixed n (the largest in cfg.nList).
struct OracleCheck {
    std::size_t n = 0;
    double theta = 0.0;
    double adaptiveMse = 0.0;
    double oracleCriterion = 0.0;
    double ratio = 0.0;
    int mStar = 0;
    std::map<int, std::size_t> mHatHistogram;
};

OracleCheck run_oracle_check(const ExperimentConfig& cfg);
std::vector<std::string> write_oracle_check(const OracleCheck& check,
                                            const ExperimentConfig& cfg);

} // namespace levyest

#endif // LEVYEST_HARNESS_HPP
