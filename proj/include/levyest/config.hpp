// SPDX-License-Identifier: MIT
//
// Flat key-value experiment configuration: `key = value` lines, `#` comments.
// Unknown keys are rejected (typos must not silently change an experiment).
// The observation step is configured as `delta`; the weight exponent, which
// shares that symbol in the penalty formulas, is configured as `weight_delta`.

#ifndef LEVYEST_CONFIG_HPP
#define LEVYEST_CONFIG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "levyest/adaptive.hpp"
#include "levyest/estimator.hpp"
#include "levyest/functionals.hpp"
#include "levyest/models.hpp"

namespace levyest {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raw parsed key-value file with typed access and unknown-key detection.
class KeyValueConfig {
  public:
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback);
    std::string require_string(const std::string& key);
    double get_double(const std::string& key, double fallback);
    std::int64_t get_int(const std::string& key, std::int64_t fallback);
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback);
    bool get_bool(const std::string& key, bool fallback);
    // Integer lists: comma-separated values and `lo..hi` ranges, mixed freely.
    std::vector<std::int64_t> get_int_list(const std::string& key,
                                           const std::vector<std::int64_t>& fallback);

    // Throws ConfigError listing any key never accessed by a getter.
    void reject_unknown_keys() const;

  private:
    std::map<std::string, std::string> values_;
    std::set<std::string> accessed_;
};

struct ExperimentConfig {
    LevyModel model;
    Functional functional;
    Kernel kernel;

    std::vector<std::size_t> nList;   // ascending, nonempty
    std::vector<int> mGrid;           // ascending, nonempty
    std::size_t replications = 1;
    std::uint64_t seed = 1;
    int threads = 1;

    PenaltyConfig penalty;            // includes weight_delta, kappa, ...
    QuadratureSpec quadrature;
    double universalC = 1.0;          // the unspecified universal constant
    int gridPointsPerPi = 64;         // master grid resolution (nodes per pi)
    // Which truncated inverse feeds the adaptive selection path (the risk
    // surface always reports both variants).
    InverseVariant inverse = InverseVariant::LogTruncated;

    // Rate-table inputs (defaults derived from the catalog, overridable).
    SmoothnessRegime regime = SmoothnessRegime::Sobolev;
    double rateA = 0.0;
    double rateS = 0.0;
    double rateBeta = 0.0;
    double rateRho = 0.0;

    std::string outDir = ".";

    void validate() const;
};

// Parses and validates a full experiment configuration; every recognized key
// is documented in the README. Throws ConfigError on malformed input.
ExperimentConfig parse_experiment_config(KeyValueConfig& kv);
ExperimentConfig load_experiment_config(const std::string& path);

// The rate-table inputs assembled from the parsed config (delta taken from
// the model, c1Finite from the finiteness of the penalty's cbar1).
RateSpec rate_spec(const ExperimentConfig& cfg);

} // namespace levyest

#endif // LEVYEST_CONFIG_HPP
