// SPDX-License-Identifier: MIT
//
// Report emission: CSV tables (RFC-4180 quoting) and a JSON summary with a
// schema version field. No timings or host information are written, so a
// rerun with the same seed produces byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "levyest/harness.hpp"

namespace levyest {

namespace {

constexpr int kSchemaVersion = 1;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// RFC-4180: quote a field when it contains a comma, quote or line break,
// doubling embedded quotes.
std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (const char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string variant_name(InverseVariant variant) {
    return variant == InverseVariant::NeumannIndicator ? "neumann" : "log_truncated";
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // binary: byte-stable line ends
    if (!out) throw std::runtime_error("cannot write report file: " + path.string());
    return out;
}

std::string write_text(const ExperimentConfig& cfg, const std::string& name,
                       const std::string& body) {
    const std::filesystem::path dir(cfg.outDir);
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / name;
    std::ofstream out = open_out(path);
    out << body;
    out.close();
    if (!out) throw std::runtime_error("failed writing report file: " + path.string());
    return path.string();
}

nlohmann::ordered_json slope_json(const LineFit& fit) {
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"stderr", fit.slopeStdErr},
            {"points", fit.points}};
}

nlohmann::ordered_json histogram_json(const std::map<int, std::size_t>& histogram) {
    nlohmann::ordered_json h = nlohmann::ordered_json::object();
    for (const auto& [m, count] : histogram) h[std::to_string(m)] = count;
    return h;
}

} // namespace

std::vector<std::string> write_report(const RiskReport& report,
                                      const ExperimentConfig& cfg) {
    std::vector<std::string> paths;

    std::string surface = "n,m,variant,mse,bias_sq,variance\n";
    for (const CellStats& cell : report.cells) {
        surface += std::to_string(cell.n) + "," + std::to_string(cell.m) + "," +
                   csv_field(variant_name(cell.variant)) + "," + fmt_double(cell.mse) +
                   "," + fmt_double(cell.biasSq) + "," + fmt_double(cell.variance) + "\n";
    }
    paths.push_back(write_text(cfg, "risk_surface.csv", surface));

    std::string histogram = "n,m_hat,count\n";
    for (const AdaptiveStats& a : report.adaptive)
        for (const auto& [mHat, count] : a.mHatHistogram)
            histogram += std::to_string(a.n) + "," + std::to_string(mHat) + "," +
                         std::to_string(count) + "\n";
    paths.push_back(write_text(cfg, "mhat_histogram.csv", histogram));

    std::string slopes = "name,slope,intercept,stderr,points\n";
    const auto slopeRow = [&](const std::string& name, const LineFit& fit) {
        slopes += csv_field(name) + "," + fmt_double(fit.slope) + "," +
                  fmt_double(fit.intercept) + "," + fmt_double(fit.slopeStdErr) + "," +
                  std::to_string(fit.points) + "\n";
    };
    slopeRow("adaptive_mse_vs_n", report.adaptiveSlope);
    slopeRow("oracle_mse_vs_n", report.oracleSlope);
    slopeRow("oracle_bandwidth_mse_vs_T", report.oracleBandwidthSlope);
    slopes += "theoretical," + fmt_double(report.theoreticalExponent) + ",0,0,0\n";
    paths.push_back(write_text(cfg, "slopes.csv", slopes));

    nlohmann::ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["model"] = report.modelName;
    summary["functional"] = report.functionalName;
    summary["kernel"] = report.kernelName;
    summary["theta"] = report.theta;
    summary["replications"] = report.replications;
    summary["seed"] = report.seed;
    summary["n_list"] = cfg.nList;
    summary["m_grid"] = cfg.mGrid;
    summary["inverse"] = variant_name(cfg.inverse);
    summary["quadrature_failures"] = report.quadratureFailures;
    summary["adaptive"] = nlohmann::ordered_json::array();
    for (const AdaptiveStats& a : report.adaptive) {
        summary["adaptive"].push_back({{"n", a.n},
                                       {"adaptive_mse", a.adaptiveMse},
                                       {"m_star", a.mStar},
                                       {"oracle_mse", a.oracleMse},
                                       {"oracle_criterion", a.oracleCriterion},
                                       {"ratio", a.ratio},
                                       {"m_hat_histogram", histogram_json(a.mHatHistogram)}});
    }
    summary["slopes"] = {{"adaptive_mse_vs_n", slope_json(report.adaptiveSlope)},
                         {"oracle_mse_vs_n", slope_json(report.oracleSlope)},
                         {"oracle_bandwidth_mse_vs_T",
                          slope_json(report.oracleBandwidthSlope)}};
    summary["theory"] = {{"exponent", report.theoreticalExponent},
                         {"rate", report.theoreticalRate}};
    paths.push_back(write_text(cfg, "summary.json", summary.dump(2) + "\n"));
    return paths;
}

std::vector<std::string> write_rate_check(const RateCheck& check,
                                          const ExperimentConfig& cfg) {
    std::vector<std::string> paths;

    std::string points = "T,mse_at_m_star\n";
    for (const auto& [T, mse] : check.points)
        points += fmt_double(T) + "," + fmt_double(mse) + "\n";
    paths.push_back(write_text(cfg, "rate_points.csv", points));

    nlohmann::ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["model"] = cfg.model.name;
    summary["functional"] = cfg.functional.name;
    summary["kernel"] = cfg.kernel.name;
    summary["regime"] =
        check.spec.regime == SmoothnessRegime::Sobolev ? "sobolev" : "hoelder";
    summary["spec"] = {{"a", check.spec.a},
                       {"s", check.spec.s},
                       {"beta", check.spec.beta},
                       {"rho", check.spec.rho},
                       {"delta", check.spec.delta},
                       {"c1_finite", check.spec.c1Finite}};
    summary["rate"] = check.rateDescription;
    summary["theoretical_slope"] = check.theoreticalSlope;
    summary["fitted"] = slope_json(check.fittedSlope);
    paths.push_back(write_text(cfg, "rate_summary.json", summary.dump(2) + "\n"));
    return paths;
}

std::vector<std::string> write_oracle_check(const OracleCheck& check,
                                            const ExperimentConfig& cfg) {
    nlohmann::ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["model"] = cfg.model.name;
    summary["functional"] = cfg.functional.name;
    summary["kernel"] = cfg.kernel.name;
    summary["n"] = check.n;
    summary["theta"] = check.theta;
    summary["adaptive_mse"] = check.adaptiveMse;
    summary["oracle_criterion"] = check.oracleCriterion;
    summary["ratio"] = check.ratio;
    summary["m_star"] = check.mStar;
    summary["m_hat_histogram"] = histogram_json(check.mHatHistogram);
    return {write_text(cfg, "oracle_check.json", summary.dump(2) + "\n")};
}

} // namespace levyest
