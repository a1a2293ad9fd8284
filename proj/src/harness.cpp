// SPDX-License-Identifier: MIT

#include "levyest/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "levyest/adaptive.hpp"
#include "levyest/ecf.hpp"
#include "levyest/rng.hpp"

namespace levyest {

LineFit fit_rate_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4)
        throw std::invalid_argument("fit_rate_slope: need at least 4 points");
    std::vector<double> x, y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& [n, mse] : points) {
        if (!(n > 0.0))
            throw std::invalid_argument("fit_rate_slope: sample sizes must be positive");
        if (!(mse > 0.0))
            throw std::invalid_argument("fit_rate_slope: mse values must be positive");
        x.push_back(std::log(n));
        y.push_back(std::log(mse));
    }
    return fit_line(x, y);
}

namespace {

// Everything one replication contributes, stored in its index slot so the
// merge order is independent of scheduling.
struct RepOutcome {
    std::vector<double> thetaNeumann; // aligned with cfg.mGrid
    std::vector<double> thetaLog;     // aligned with cfg.mGrid
    int mHat = 0;
    double thetaAdaptive = 0.0;
    bool failed = false;
};

RepOutcome run_replication(const ExperimentConfig& cfg, std::size_t n, std::size_t rep,
                           const FrequencyGrid& grid) {
    const std::uint64_t streamSeed = substream_seed(cfg.seed, n, rep);
    const SplitSample sample = sample_increments(cfg.model, n, streamSeed);
    const GridEcf gridEcf = ecf_grid(sample, grid);

    RepOutcome out;
    out.thetaNeumann.reserve(cfg.mGrid.size());
    out.thetaLog.reserve(cfg.mGrid.size());
    std::vector<EstimateRecord> primary;
    primary.reserve(cfg.mGrid.size());
    const TruncationConfig neumannCfg =
        cfg.penalty.truncation(InverseVariant::NeumannIndicator);
    const TruncationConfig logCfg = cfg.penalty.truncation(InverseVariant::LogTruncated);
    for (const int m : cfg.mGrid) {
        const EstimateRecord neumann =
            kernel_estimate_grid(gridEcf, cfg.functional, cfg.kernel, m, neumannCfg);
        const EstimateRecord logTrunc =
            kernel_estimate_grid(gridEcf, cfg.functional, cfg.kernel, m, logCfg);
        out.thetaNeumann.push_back(neumann.thetaHat);
        out.thetaLog.push_back(logTrunc.thetaHat);
        primary.push_back(cfg.inverse == InverseVariant::NeumannIndicator ? neumann
                                                                          : logTrunc);
    }

    const PenaltyField field = penalty_field(gridEcf, cfg.functional, cfg.penalty);
    const PenaltyTable table = build_penalty_table(field, cfg.kernel, cfg.mGrid, cfg.penalty);
    const SelectionResult sel = select_m_hat(primary, table, cfg.penalty);
    out.mHat = sel.mHat;
    out.thetaAdaptive = sel.thetaHatAdaptive;
    return out;
}

struct TwoPassStats {
    double mse = 0.0;
    double biasSq = 0.0;
    double variance = 0.0; // population form, so mse = biasSq + variance
};

TwoPassStats two_pass_stats(const std::vector<double>& values, double theta) {
    TwoPassStats stats;
    if (values.empty()) return stats;
    const double count = static_cast<double>(values.size());
    std::vector<double> terms(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double e = values[i] - theta;
        terms[i] = e * e;
    }
    stats.mse = pairwise_sum(terms) / count;
    const double mean = pairwise_sum(values) / count;
    stats.biasSq = (mean - theta) * (mean - theta);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean;
        terms[i] = d * d;
    }
    stats.variance = pairwise_sum(terms) / count;
    return stats;
}

const CellStats& find_cell(const std::vector<CellStats>& cells, std::size_t n, int m,
                           InverseVariant variant) {
    for (const CellStats& cell : cells)
        if (cell.n == n && cell.m == m && cell.variant == variant) return cell;
    throw std::logic_error("find_cell: missing risk-surface cell");
}

} // namespace

RiskReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const LevyModel& model = cfg.model;

    RiskReport report;
    report.modelName = model.name;
    report.functionalName = cfg.functional.name;
    report.kernelName = cfg.kernel.name;
    report.replications = cfg.replications;
    report.seed = cfg.seed;
    report.theta = true_theta(model, cfg.functional);

    const int maxM = cfg.mGrid.back();
    const FrequencyGrid masterGrid{std::numbers::pi / cfg.gridPointsPerPi,
                                   cfg.gridPointsPerPi * maxM};
    const std::size_t repCount = cfg.replications;

    for (const std::size_t n : cfg.nList) {
        const OracleSelection oracle = oracle_m_star(model, cfg.functional, cfg.kernel,
                                                     cfg.mGrid, cfg.penalty, n,
                                                     cfg.quadrature);

        std::vector<RepOutcome> slots(repCount);
        std::atomic<std::size_t> cursor{0};
        std::exception_ptr firstError;
        std::mutex errorMutex;
        const auto worker = [&]() {
            for (;;) {
                const std::size_t r = cursor.fetch_add(1);
                if (r >= repCount) return;
                try {
                    slots[r] = run_replication(cfg, n, r, masterGrid);
                } catch (const QuadratureError&) {
                    slots[r].failed = true;
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(errorMutex);
                    if (!firstError) firstError = std::current_exception();
                    return;
                }
            }
        };
        const int threadCount =
            static_cast<int>(std::min<std::size_t>(cfg.threads, repCount));
        if (threadCount <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(threadCount);
            for (int t = 0; t < threadCount; ++t) pool.emplace_back(worker);
            for (std::thread& t : pool) t.join();
        }
        if (firstError) std::rethrow_exception(firstError);

        // Index-order merge of the surviving replications.
        std::size_t kept = 0;
        for (const RepOutcome& slot : slots) {
            if (slot.failed)
                ++report.quadratureFailures;
            else
                ++kept;
        }
        if (kept == 0)
            throw QuadratureError("run_experiment: every replication failed at n = " +
                                  std::to_string(n));

        for (std::size_t mi = 0; mi < cfg.mGrid.size(); ++mi) {
            for (const InverseVariant variant :
                 {InverseVariant::NeumannIndicator, InverseVariant::LogTruncated}) {
                std::vector<double> values;
                values.reserve(kept);
                for (const RepOutcome& slot : slots) {
                    if (slot.failed) continue;
                    values.push_back(variant == InverseVariant::NeumannIndicator
                                         ? slot.thetaNeumann[mi]
                                         : slot.thetaLog[mi]);
                }
                const TwoPassStats stats = two_pass_stats(values, report.theta);
                CellStats cell;
                cell.n = n;
                cell.m = cfg.mGrid[mi];
                cell.variant = variant;
                cell.mse = stats.mse;
                cell.biasSq = stats.biasSq;
                cell.variance = stats.variance;
                report.cells.push_back(cell);
            }
        }

        AdaptiveStats adaptive;
        adaptive.n = n;
        {
            std::vector<double> values;
            values.reserve(kept);
            for (const RepOutcome& slot : slots) {
                if (slot.failed) continue;
                values.push_back(slot.thetaAdaptive);
                ++adaptive.mHatHistogram[slot.mHat];
            }
            adaptive.adaptiveMse = two_pass_stats(values, report.theta).mse;
        }
        adaptive.mStar = oracle.mStar;
        const std::size_t starIdx = static_cast<std::size_t>(
            std::find(cfg.mGrid.begin(), cfg.mGrid.end(), oracle.mStar) -
            cfg.mGrid.begin());
        adaptive.oracleCriterion = oracle.criterion[starIdx];
        adaptive.oracleMse = find_cell(report.cells, n, oracle.mStar, cfg.inverse).mse;
        adaptive.ratio = adaptive.oracleCriterion > 0.0
                             ? adaptive.adaptiveMse / adaptive.oracleCriterion
                             : 0.0;
        report.adaptive.push_back(adaptive);
    }

    const double totalReps = static_cast<double>(repCount * cfg.nList.size());
    if (static_cast<double>(report.quadratureFailures) > 0.01 * totalReps)
        throw QuadratureError("run_experiment: more than 1% of replications failed (" +
                              std::to_string(report.quadratureFailures) + " of " +
                              std::to_string(repCount * cfg.nList.size()) + ")");

    // Slope fits, each over the sample sizes with strictly positive MSE.
    std::vector<std::pair<double, double>> adaptivePts, oraclePts, bandwidthPts;
    for (const AdaptiveStats& a : report.adaptive) {
        const double T = model.delta * static_cast<double>(a.n);
        if (a.adaptiveMse > 0.0)
            adaptivePts.emplace_back(static_cast<double>(a.n), a.adaptiveMse);
        if (a.oracleMse > 0.0)
            oraclePts.emplace_back(static_cast<double>(a.n), a.oracleMse);
        const double bw =
            find_cell(report.cells, a.n, a.mStar, InverseVariant::NeumannIndicator).mse;
        if (bw > 0.0) bandwidthPts.emplace_back(T, bw);
    }
    if (adaptivePts.size() >= 4) report.adaptiveSlope = fit_rate_slope(adaptivePts);
    if (oraclePts.size() >= 4) report.oracleSlope = fit_rate_slope(oraclePts);
    if (bandwidthPts.size() >= 4)
        report.oracleBandwidthSlope = fit_rate_slope(bandwidthPts);

    const RateSpec spec = rate_spec(cfg);
    const double t1 = model.delta * static_cast<double>(cfg.nList.front());
    const double t2 = model.delta * static_cast<double>(cfg.nList.back());
    if (t2 > 1.0) {
        report.theoreticalRate = theoretical_rate(spec, t2).description;
        report.theoreticalExponent = (t1 > 1.0 && t1 < t2)
                                         ? rate_log_slope(spec, t1, t2)
                                         : theoretical_rate(spec, t2).exponent;
    }
    return report;
}

RateCheck run_rate_check(const ExperimentConfig& cfg) {
    const RiskReport report = run_experiment(cfg);

    RateCheck check;
    check.spec = rate_spec(cfg);
    // The rate statements concern the plain indicator-truncated estimator at
    // the oracle cutoff, so the points are the Neumann cells at m*(n).
    for (const AdaptiveStats& a : report.adaptive) {
        const double T = cfg.model.delta * static_cast<double>(a.n);
        const double mse =
            find_cell(report.cells, a.n, a.mStar, InverseVariant::NeumannIndicator).mse;
        check.points.emplace_back(T, mse);
    }
    check.fittedSlope = fit_rate_slope(check.points);
    const double t1 = check.points.front().first;
    const double t2 = check.points.back().first;
    check.theoreticalSlope = rate_log_slope(check.spec, t1, t2);
    check.rateDescription = theoretical_rate(check.spec, t2).description;
    return check;
}

OracleCheck run_oracle_check(const ExperimentConfig& cfg) {
    ExperimentConfig single = cfg;
    single.nList = {cfg.nList.back()};
    const RiskReport report = run_experiment(single);
    const AdaptiveStats& a = report.adaptive.front();

    OracleCheck check;
    check.n = a.n;
    check.theta = report.theta;
    check.adaptiveMse = a.adaptiveMse;
    check.oracleCriterion = a.oracleCriterion;
    check.ratio = a.ratio;
    check.mStar = a.mStar;
    check.mHatHistogram = a.mHatHistogram;
    return check;
}

} // namespace levyest
