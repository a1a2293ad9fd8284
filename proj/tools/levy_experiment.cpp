// SPDX-License-Identifier: MIT
//
// Experiment CLI. Subcommands:
//   run <config>           Monte Carlo risk surface + adaptive selection report
//   rates <config>         oracle-bandwidth rate check against the rate table
//   oracle-check <config>  adaptive/oracle ratio at the largest sample size
// --seed / --threads / --out-dir override the corresponding config keys.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levyest/config.hpp"
#include "levyest/harness.hpp"

namespace {

void report_paths(const std::vector<std::string>& paths) {
    for (const std::string& path : paths) std::cout << "wrote " << path << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive estimation of linear functionals of a Levy jump measure"};
    app.require_subcommand(1);

    std::uint64_t seedOverride = 0;
    int threadsOverride = 1;
    std::string outDirOverride;
    CLI::Option* seedOpt =
        app.add_option("--seed", seedOverride, "Override the config seed");
    CLI::Option* threadsOpt =
        app.add_option("--threads", threadsOverride, "Override the config thread count");
    CLI::Option* outDirOpt =
        app.add_option("--out-dir", outDirOverride, "Override the config output directory");

    std::string configPath;
    CLI::App* runCmd = app.add_subcommand(
        "run", "Monte Carlo risk surface and adaptive-selection report");
    CLI::App* ratesCmd =
        app.add_subcommand("rates", "Oracle-bandwidth rate check vs the rate table");
    CLI::App* oracleCmd = app.add_subcommand(
        "oracle-check", "Adaptive/oracle ratio at the largest sample size");
    for (CLI::App* cmd : {runCmd, ratesCmd, oracleCmd}) {
        cmd->fallthrough(); // let --seed/--threads/--out-dir follow the subcommand
        cmd->add_option("config", configPath, "Experiment config file")
            ->required()
            ->check(CLI::ExistingFile);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        levyest::ExperimentConfig cfg = levyest::load_experiment_config(configPath);
        if (seedOpt->count() > 0) cfg.seed = seedOverride;
        if (threadsOpt->count() > 0) cfg.threads = threadsOverride;
        if (outDirOpt->count() > 0) cfg.outDir = outDirOverride;
        cfg.validate();

        if (runCmd->parsed()) {
            const levyest::RiskReport report = levyest::run_experiment(cfg);
            std::cout << "model " << report.modelName << ", functional "
                      << report.functionalName << ", kernel " << report.kernelName
                      << ", theta " << report.theta << "\n";
            for (const levyest::AdaptiveStats& a : report.adaptive)
                std::cout << "n " << a.n << ": adaptive mse " << a.adaptiveMse
                          << ", m* " << a.mStar << ", oracle mse " << a.oracleMse
                          << ", ratio " << a.ratio << "\n";
            if (report.adaptiveSlope.points > 0)
                std::cout << "adaptive slope " << report.adaptiveSlope.slope
                          << " (oracle " << report.oracleSlope.slope << ", theoretical "
                          << report.theoreticalExponent << ")\n";
            if (report.quadratureFailures > 0)
                std::cout << "excluded replications: " << report.quadratureFailures
                          << "\n";
            report_paths(levyest::write_report(report, cfg));
        } else if (ratesCmd->parsed()) {
            const levyest::RateCheck check = levyest::run_rate_check(cfg);
            std::cout << "rate " << check.rateDescription << ": theoretical slope "
                      << check.theoreticalSlope << ", fitted " << check.fittedSlope.slope
                      << " +- " << check.fittedSlope.slopeStdErr << "\n";
            report_paths(levyest::write_rate_check(check, cfg));
        } else {
            const levyest::OracleCheck check = levyest::run_oracle_check(cfg);
            std::cout << "n " << check.n << ": adaptive mse " << check.adaptiveMse
                      << ", oracle criterion " << check.oracleCriterion << ", ratio "
                      << check.ratio << ", m* " << check.mStar << "\n";
            report_paths(levyest::write_oracle_check(check, cfg));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
