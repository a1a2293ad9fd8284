// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "levyest/config.hpp"

using namespace levyest;

namespace {

bool message_contains(const std::exception& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

// Minimal valid experiment body; tests append overrides below it.
std::string base_config() {
    return "model = compound_poisson\n"
           "intensity = 1.0\n"
           "jump = exponential\n"
           "jump_scale = 1.0\n"
           "functional = gaussian\n"
           "n_list = 100,200\n";
}

ExperimentConfig parse(const std::string& text) {
    KeyValueConfig kv = KeyValueConfig::from_string(text);
    return parse_experiment_config(kv);
}

} // namespace

TEST_CASE("key-value parsing") {
    KeyValueConfig kv = KeyValueConfig::from_string(
        "# full-line comment\n"
        "alpha = 1.5   # trailing comment\n"
        "\n"
        "  beta_2 = hello world \n"
        "flag = Yes\n"
        "count = 42\n");
    CHECK(kv.has("alpha"));
    CHECK_FALSE(kv.has("missing"));
    CHECK(kv.get_double("alpha", 0.0) == doctest::Approx(1.5));
    CHECK(kv.get_string("beta_2", "") == "hello world");
    CHECK(kv.get_bool("flag", false));
    CHECK(kv.get_int("count", 0) == 42);
    CHECK(kv.get_uint("count", 0) == 42);
    CHECK(kv.get_double("missing", 2.5) == doctest::Approx(2.5));
    CHECK(kv.require_string("alpha") == "1.5");
    CHECK_THROWS_AS(kv.require_string("missing"), ConfigError);
    CHECK_NOTHROW(kv.reject_unknown_keys());

    CHECK_THROWS_AS(KeyValueConfig::from_string("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::from_string("just a line without equals\n"),
                    ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::from_string("2bad = 1\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::from_string("bad-key = 1\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::from_string("empty =\n"), ConfigError);
}

TEST_CASE("typed getter errors") {
    KeyValueConfig kv = KeyValueConfig::from_string(
        "num = 1.5x\n"
        "neg = -3\n"
        "frac = 12.5\n"
        "word = maybe\n");
    CHECK_THROWS_AS(kv.get_double("num", 0.0), ConfigError);
    CHECK_THROWS_AS(kv.get_uint("neg", 0), ConfigError);
    CHECK(kv.get_int("neg", 0) == -3);
    CHECK_THROWS_AS(kv.get_int("frac", 0), ConfigError);
    CHECK_THROWS_AS(kv.get_bool("word", false), ConfigError);
    CHECK_NOTHROW(kv.reject_unknown_keys());
}

TEST_CASE("integer lists and ranges") {
    KeyValueConfig kv = KeyValueConfig::from_string(
        "plain = 1,2,5\n"
        "range = 1..4\n"
        "mixed = 1, 4..6, 9\n"
        "spaced = 2 .. 4\n"
        "holey = 1,,2\n"
        "reversed = 5..3\n");
    CHECK(kv.get_int_list("plain", {}) == std::vector<std::int64_t>{1, 2, 5});
    CHECK(kv.get_int_list("range", {}) == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(kv.get_int_list("mixed", {}) == std::vector<std::int64_t>{1, 4, 5, 6, 9});
    CHECK(kv.get_int_list("spaced", {}) == std::vector<std::int64_t>{2, 3, 4});
    CHECK(kv.get_int_list("absent", {7}) == std::vector<std::int64_t>{7});
    CHECK_THROWS_AS(kv.get_int_list("holey", {}), ConfigError);
    CHECK_THROWS_AS(kv.get_int_list("reversed", {}), ConfigError);
}

TEST_CASE("unknown keys are rejected by name") {
    KeyValueConfig kv = KeyValueConfig::from_string(base_config() + "typo_key = 1\n");
    try {
        parse_experiment_config(kv);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(message_contains(e, "typo_key"));
    }
}

TEST_CASE("full experiment round trip") {
    const ExperimentConfig cfg = parse(
        "model = compound_poisson\n"
        "delta = 0.5\n"
        "intensity = 2.0\n"
        "jump = exponential\n"
        "jump_scale = 0.8\n"
        "functional = gaussian\n"
        "center = 1.0\n"
        "width = 0.7\n"
        "kernel = taper\n"
        "taper_power = 3\n"
        "n_list = 100, 400..402\n"
        "m_grid = 1,2,4\n"
        "replications = 5\n"
        "seed = 99\n"
        "threads = 2\n"
        "out_dir = results\n"
        "universal_c = 2.0\n"
        "grid_per_pi = 32\n"
        "quad_nodes = 128\n"
        "quad_refine = true\n"
        "quad_rel_tol = 1e-5\n"
        "inverse = neumann\n"
        "c1 = 4.0\n"
        "gamma = 0.2\n"
        "weight_delta = 0.3\n"
        "positive_part = yes\n"
        "regime = hoelder\n"
        "rate_a = 1.5\n"
        "rate_s = 0.25\n"
        "rate_beta = 0.1\n"
        "rate_rho = 0.0\n");
    CHECK(cfg.model.delta == doctest::Approx(0.5));
    CHECK(cfg.functional.name == "gaussian");
    // center/width reach the transform: |Ff(u)| = w sqrt(2 pi) e^{-w^2 u^2/2},
    // arg Ff(u) = u * center.
    const Complex ff = functional_fourier(cfg.functional, 1.0);
    CHECK(std::abs(ff) ==
          doctest::Approx(0.7 * std::sqrt(2.0 * std::numbers::pi) *
                          std::exp(-0.5 * 0.49)));
    CHECK(std::arg(ff) == doctest::Approx(1.0));
    CHECK(cfg.kernel.name == "taper");
    CHECK(kernel_ft(cfg.kernel, std::numbers::pi / 2.0) ==
          doctest::Approx(1.0 - 0.125));
    CHECK(cfg.nList == std::vector<std::size_t>{100, 400, 401, 402});
    CHECK(cfg.mGrid == std::vector<int>{1, 2, 4});
    CHECK(cfg.replications == 5);
    CHECK(cfg.seed == 99);
    CHECK(cfg.threads == 2);
    CHECK(cfg.outDir == "results");
    CHECK(cfg.universalC == doctest::Approx(2.0));
    CHECK(cfg.gridPointsPerPi == 32);
    CHECK(cfg.quadrature.nodes == 128);
    CHECK(cfg.quadrature.refine);
    CHECK(cfg.quadrature.relTol == doctest::Approx(1e-5));
    CHECK(cfg.inverse == InverseVariant::NeumannIndicator);
    CHECK(cfg.penalty.c1 == doctest::Approx(4.0));
    CHECK(cfg.penalty.gamma == doctest::Approx(0.2));
    CHECK(cfg.penalty.delta == doctest::Approx(0.3));
    CHECK(cfg.penalty.kappa == doctest::Approx(2.0 * (std::sqrt(16.0) + 0.2)));
    CHECK(cfg.penalty.cPen == doctest::Approx(16.0 * 8.2));
    // eta and the variance bounds come from the model (universal_c applied).
    const PenaltyConfig derived = PenaltyConfig::for_model(cfg.model, cfg.universalC);
    CHECK(cfg.penalty.eta == doctest::Approx(derived.eta));
    CHECK(cfg.penalty.eta == doctest::Approx(1.0 / (2.0 * 0.8)));
    CHECK(cfg.penalty.cbar1 == doctest::Approx(derived.cbar1));
    CHECK(cfg.penalty.cbar2 == doctest::Approx(derived.cbar2));
    CHECK(cfg.penalty.positivePart);
    CHECK(cfg.regime == SmoothnessRegime::Hoelder);
    CHECK(cfg.rateA == doctest::Approx(1.5));
    CHECK(cfg.rateS == doctest::Approx(0.25));
    CHECK(cfg.rateBeta == doctest::Approx(0.1));

    const RateSpec spec = rate_spec(cfg);
    CHECK(spec.a == doctest::Approx(1.5));
    CHECK(spec.delta == doctest::Approx(0.5));
    CHECK(spec.c1Finite);
    CHECK(spec.regime == SmoothnessRegime::Hoelder);
}

TEST_CASE("catalog-derived defaults") {
    const ExperimentConfig dirac = parse(
        "model = compound_poisson\n"
        "functional = dirac\n"
        "x0 = 1.0\n"
        "n_list = 100,200\n");
    CHECK(dirac.regime == SmoothnessRegime::Hoelder);
    CHECK(dirac.rateS == doctest::Approx(0.0));
    CHECK(dirac.rateA == doctest::Approx(2.0)); // exponential jumps: Fmu ~ u^-2
    CHECK(dirac.rateBeta == doctest::Approx(0.0));
    CHECK(dirac.rateRho == doctest::Approx(0.0));
    CHECK(dirac.inverse == InverseVariant::LogTruncated);
    CHECK(dirac.mGrid.size() == 64); // default grid 1..64
    CHECK(dirac.penalty.kappa == doctest::Approx(4.2));

    const ExperimentConfig gs = parse(
        "model = gamma_subordinator\n"
        "shape = 1.5\n"
        "scale = 1.0\n"
        "delta = 1.0\n"
        "functional = gaussian\n"
        "n_list = 100,200\n");
    CHECK(gs.regime == SmoothnessRegime::Sobolev);
    CHECK(std::isinf(gs.rateS)); // Gaussian transforms decay faster than any power
    CHECK(gs.rateBeta == doctest::Approx(3.0)); // 2 * shape * delta / delta
    const RateSpec spec = rate_spec(gs);
    CHECK(spec.c1Finite);
    CHECK(theoretical_rate(spec, 100.0).exponent == doctest::Approx(-1.0));

    // cbar1 comes out infinite for uniform jumps, flipping c1Finite.
    const ExperimentConfig cpu = parse(
        "model = compound_poisson\n"
        "jump = uniform\n"
        "jump_lo = 0.2\n"
        "jump_hi = 1.2\n"
        "functional = bump\n"
        "bump_lo = 0.4\n"
        "bump_hi = 1.0\n"
        "n_list = 100,200\n");
    CHECK(std::isinf(cpu.penalty.cbar1));
    CHECK_FALSE(rate_spec(cpu).c1Finite);
}

TEST_CASE("malformed experiments are rejected") {
    CHECK_THROWS_AS(parse("model = student_t\nfunctional = gaussian\nn_list = 4,8\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse("model = compound_poisson\njump = cauchy\n"
                          "functional = gaussian\nn_list = 4,8\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse("model = compound_poisson\nfunctional = wavelet\nn_list = 4,8\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "kernel = haar\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "inverse = tikhonov\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "regime = besov\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "quad_rule = simpson\n"), ConfigError);
    CHECK_THROWS_AS(parse("model = compound_poisson\nfunctional = gaussian\n"),
                    ConfigError); // n_list missing
    CHECK_THROWS_AS(parse("model = compound_poisson\nfunctional = gaussian\n"
                          "n_list = 200,100\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse("model = compound_poisson\nfunctional = gaussian\n"
                          "n_list = 1,100\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "m_grid = 0,1\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "m_grid = 4,2\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "replications = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "threads = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "grid_per_pi = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "universal_c = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "quad_nodes = 62\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "kappa = 1.0\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "eta = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse(base_config() + "delta = 0\n"), ConfigError);
}

TEST_CASE("overrides reach the penalty machinery") {
    const ExperimentConfig cfg = parse(base_config() +
                                       "kappa = 10\n"
                                       "eta = 2.5\n"
                                       "cbar1 = 12.0\n"
                                       "cbar2 = 7.0\n");
    CHECK(cfg.penalty.kappa == doctest::Approx(10.0));
    CHECK(cfg.penalty.eta == doctest::Approx(2.5));
    CHECK(cfg.penalty.cbar1 == doctest::Approx(12.0));
    CHECK(cfg.penalty.cbar2 == doctest::Approx(7.0));

    // universal_c scales the model-derived variance bounds.
    const ExperimentConfig scaled = parse(base_config() + "universal_c = 3.0\n");
    CHECK(scaled.penalty.cbar2 == doctest::Approx(12.0)); // 3 * C2(CP+Exp(1,1)) = 3 * 4
    CHECK(scaled.penalty.cbar1 == doctest::Approx(3.0 * (4.0 + std::numbers::pi)));
}

TEST_CASE("file loading") {
    const std::string path = "unit_config_tmp.cfg";
    {
        std::ofstream out(path);
        out << base_config();
    }
    const ExperimentConfig cfg = load_experiment_config(path);
    CHECK(cfg.nList == std::vector<std::size_t>{100, 200});
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_experiment_config("does_not_exist.cfg"), ConfigError);
}
