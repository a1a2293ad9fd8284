// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "levyest/adaptive.hpp"
#include "naive_oracles.hpp"

using namespace levyest;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureSpec spec_with_nodes(int nodes) {
    QuadratureSpec q;
    q.nodes = nodes;
    return q;
}

} // namespace

TEST_CASE("penalty config coupling and validation") {
    const PenaltyConfig def = PenaltyConfig::with_defaults();
    CHECK(def.kappa == doctest::Approx(4.2));
    CHECK(def.cPen == doctest::Approx(64.0));
    CHECK_NOTHROW(def.validate());

    const PenaltyConfig big = PenaltyConfig::with_defaults(4.0);
    CHECK(big.kappa == doctest::Approx(8.2));
    CHECK(big.cPen == doctest::Approx(129.6));
    CHECK_NOTHROW(big.validate());

    PenaltyConfig broken = big;
    broken.kappa = 8.0; // below the coupled minimum 8.2
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
    broken = big;
    broken.cPen = 100.0; // below 129.6
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
    broken = def;
    broken.cbar1 = -1.0;
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
    broken = def;
    broken.eta = 0.0;
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
    CHECK_THROWS_AS(PenaltyConfig::with_defaults(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PenaltyConfig::with_defaults(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(PenaltyConfig::with_defaults(1.0, 0.1, 0.0), std::invalid_argument);

    const LevyModel cp = LevyModel::compound_poisson(1.0, JumpLaw::exponential(1.0));
    const PenaltyConfig fm = PenaltyConfig::for_model(cp);
    CHECK(fm.eta == doctest::Approx(0.5));
    CHECK(fm.cbar1 == doctest::Approx(4.0 + kPi));
    CHECK(fm.cbar2 == doctest::Approx(4.0));
    const PenaltyConfig fm2 = PenaltyConfig::for_model(cp, 2.0);
    CHECK(fm2.cbar1 == doctest::Approx(2.0 * (4.0 + kPi)));
    CHECK(fm2.cbar2 == doctest::Approx(8.0));
    const LevyModel cpu = LevyModel::compound_poisson(1.0, JumpLaw::uniform(0.2, 1.2));
    const PenaltyConfig fmU = PenaltyConfig::for_model(cpu);
    CHECK(std::isinf(fmU.cbar1));
    CHECK_NOTHROW(fmU.validate());

    const TruncationConfig t = fm.truncation(InverseVariant::NeumannIndicator);
    CHECK(t.kappa == fm.kappa);
    CHECK(t.delta == fm.delta);
    CHECK(t.gamma == fm.gamma);
    CHECK(t.variant == InverseVariant::NeumannIndicator);
}

TEST_CASE("sigma, x, and correction match the direct transcription") {
    const LevyModel cp = LevyModel::compound_poisson(1.0, JumpLaw::exponential(1.0));
    const SplitSample sample = sample_increments(cp, 40, 5);
    const PenaltyConfig cfg = PenaltyConfig::for_model(cp);
    const QuadratureSpec q = spec_with_nodes(64);
    const Functional f = Functional::gaussian(0.0, 1.0);

    for (const auto& kernel : {Kernel::sinc(), Kernel::taper(2.0)}) {
        for (const auto& [m, k] : std::vector<std::pair<int, int>>{{1, 2}, {0, 1}, {2, 4}}) {
            CAPTURE(kernel.name);
            CAPTURE(m);
            CAPTURE(k);
            const SigmaX lib = sigma_x_tilde(sample, f, kernel, m, k, cfg, q);
            const naive::SigmaX ref = naive::sigma_x(sample, f, kernel, m, k, cfg, q.nodes);
            CHECK(lib.sigmaSq == doctest::Approx(ref.sigmaSq).epsilon(1e-11));
            CHECK(lib.x == doctest::Approx(ref.x).epsilon(1e-11));

            const double libCorr = correction(sample, f, kernel, m, k, cfg, q);
            const double refCorr = naive::correction(sample, f, kernel, m, k, cfg, q.nodes);
            CHECK(libCorr == doctest::Approx(refCorr).epsilon(1e-11));
        }
    }
}

TEST_CASE("lambda floor, clamps, and monotonicity") {
    PenaltyConfig cfg = PenaltyConfig::with_defaults();
    cfg.eta = 0.5;
    // Degenerate inputs: every log factor clamps to 1, so lambda = max(8/eta, 1).
    CHECK(lambda_tilde(0.0, 0.0, 1, 2, 100, cfg) == doctest::Approx(16.0));
    cfg.eta = 16.0;
    CHECK(lambda_tilde(0.0, 0.0, 1, 2, 100, cfg) == doctest::Approx(1.0));

    cfg.eta = 0.5;
    double last = 0.0;
    for (const double x : {1e-3, 1.0, 10.0, 100.0}) {
        const double lam = lambda_tilde(x, 1.0, 1, 3, 1000, cfg);
        CHECK(lam >= last);
        CHECK(lam >= 16.0 * (1.0 - 1e-12));
        last = lam;
    }

    CHECK_THROWS_AS(lambda_tilde(1.0, 1.0, 3, 2, 100, cfg), std::invalid_argument);
    CHECK_THROWS_AS(lambda_tilde(1.0, 1.0, 1, 2, 1, cfg), std::invalid_argument);
}

TEST_CASE("degenerate penalty inputs give exact zeros") {
    const LevyModel cp = LevyModel::compound_poisson(1.0, JumpLaw::exponential(1.0));
    const SplitSample sample = sample_increments(cp, 30, 9);
    const PenaltyConfig cfg = PenaltyConfig::for_model(cp);
    const QuadratureSpec q = spec_with_nodes(64);

    // Zero functional: the ratio vanishes identically.
    const SigmaX zf = sigma_x_tilde(sample, Functional::zero(), Kernel::sinc(), 1, 2, cfg, q);
    CHECK(zf.sigmaSq == 0.0);
    CHECK(zf.x == 0.0);
    CHECK(correction(sample, Functional::zero(), Kernel::sinc(), 1, 2, cfg, q) == 0.0);

    // Band entirely outside the field's window: the sinc difference
    // Delta_{64,128}FK vanishes on |u| <= 8 pi.
    const PenaltyField field = penalty_field_deterministic(
        cp, Functional::gaussian(0.0, 1.0), FrequencyGrid{kPi / 16.0, 128}, 100, cfg);
    const SigmaX clipped = sigma_x_tilde(field, Kernel::sinc(), 64, 128, cfg);
    CHECK(clipped.sigmaSq == 0.0);
    CHECK(clipped.x == 0.0);
    CHECK(correction(field, Kernel::sinc(), 64, 128, cfg) == 0.0);
}

TEST_CASE("penalty table recomputation identity and structure") {
    const LevyModel cp = LevyModel::compound_poisson(1.0, JumpLaw::exponential(1.0));
    const SplitSample sample = sample_increments(cp, 200, 13);
    const PenaltyConfig cfg = PenaltyConfig::for_model(cp);
    const std::vector<int> mGrid{1, 2, 4};
    const FrequencyGrid master = spec_with_nodes(64).band_grid(4);
    const GridEcf g = ecf_grid(sample, master);
    const PenaltyField field = penalty_field(g, Functional::gaussian(0.0, 1.0), cfg);
    const PenaltyTable table = build_penalty_table(field, Kernel::sinc(), mGrid, cfg);

    CHECK(table.mGrid == mGrid);
    CHECK(table.pen.size() == mGrid.size());
    CHECK(table.n == sample.n());
    for (std::size_t i = 0; i < mGrid.size(); ++i) {
        for (std::size_t j = i + 1; j < mGrid.size(); ++j) {
            const PairEntry& e = table.at(mGrid[i], mGrid[j]);
            const SigmaX sx = sigma_x_tilde(field, Kernel::sinc(), mGrid[i], mGrid[j], cfg);
            CHECK(e.sigmaSq == sx.sigmaSq);
            CHECK(e.x == sx.x);
            CHECK(e.lambda ==
                  lambda_tilde(sx.x, sx.sigmaSq, mGrid[i], mGrid[j], table.n, cfg));
            CHECK(e.corr == correction(field, Kernel::sinc(), mGrid[i], mGrid[j], cfg));
            CHECK(e.corr >= 0.0);
            CHECK(e.sigmaSq >= 0.0);
            CHECK(e.x >= 0.0);
            CHECK(e.lambda >= 1.0 * (1.0 - 1e-12));
        }
        CHECK(table.pen[i] == penalty(field, Kernel::sinc(), mGrid[i], cfg));
        CHECK(table.pen[i] > 0.0);
    }
    CHECK_THROWS_AS(table.at(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(table.at(1, 3), std::invalid_argument);

    // pen(m) = H2(0, m) by definition.
    CHECK(penalty(field, Kernel::sinc(), 2, cfg) ==
          correction(field, Kernel::sinc(), 0, 2, cfg));
    CHECK_THROWS_AS(penalty(field, Kernel::sinc(), 0, cfg), std::invalid_argument);

    CHECK_THROWS_AS(build_penalty_table(field, Kernel::sinc(), {}, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_penalty_table(field, Kernel::sinc(), {0, 1}, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_penalty_table(field, Kernel::sinc(), {2, 1}, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_penalty_table(field, Kernel::sinc(), {1, 1}, cfg),
                    std::invalid_argument);
}

TEST_CASE("deterministic penalty is nondecreasing in the cutoff for sinc") {
    const LevyModel cp = LevyModel::compound_poisson(1.0, JumpLaw::exponential(1.0));
    const PenaltyConfig cfg = PenaltyConfig::for_model(cp);
    const PenaltyField field = penalty_field_deterministic(
        cp, Functional::gaussian(0.0, 1.0), FrequencyGrid{kPi / 8.0, 64}, 1000, cfg);
    double last = 0.0;
    for (const int m : {1, 2, 4, 8}) {
        const double pen = penalty(field, Kernel::sinc(), m, cfg);
        CHECK(pen >= last);
        last = pen;
    }
}

TEST_CASE("stochastic and deterministic penalties coincide on the zero model") {
    // All increments are exactly zero, so phiHat == 1 == phi and the stochastic
    // field reproduces the deterministic one bit for bit.
    const LevyModel zero = LevyModel::zero_measure();
    const SplitSample sample = sample_increments(zero, 10000, 21);
    const PenaltyConfig cfg = PenaltyConfig::with_defaults();
    const Functional f = Functional::gaussian(0.0, 1.0);
    const FrequencyGrid master{kPi / 8.0, 32};

    const GridEcf g = ecf_grid(sample, master, /*withDeriv=*/false);
    const PenaltyField stoch = penalty_field(g, f, cfg);
    const PenaltyField det = penalty_field_deterministic(zero, f, master, sample.n(), cfg);
    REQUIRE(stoch.ratio.size() == det.ratio.size());
    for (std::size_t i = 0; i < stoch.ratio.size(); ++i) {
        CHECK(stoch.ratio[i] == det.ratio[i]);
        CHECK(stoch.invW[i] == det.invW[i]);
    }
    CHECK(penalty(stoch, Kernel::sinc(), 2, cfg) == penalty(det, Kernel::sinc(), 2, cfg));
}

TEST_CASE("stochastic penalty approximates its deterministic analog") {
    const LevyModel cp = LevyModel::compound_poisson(1.0, JumpLaw::exponential(1.0));
    const SplitSample sample = sample_increments(cp, 20000, 33);
    const PenaltyConfig cfg = PenaltyConfig::for_model(cp);
    const Functional f = Functional::gaussian(0.0, 1.0);
    const FrequencyGrid master{kPi / 16.0, 32}; // extent 2 pi

    const GridEcf g = ecf_grid(sample, master, /*withDeriv=*/false);
    const PenaltyField stoch = penalty_field(g, f, cfg);
    const PenaltyField det = penalty_field_deterministic(cp, f, master, sample.n(), cfg);
    for (const int m : {1, 2}) {
        const double ps = penalty(stoch, Kernel::sinc(), m, cfg);
        const double pd = penalty(det, Kernel::sinc(), m, cfg);
        CHECK(ps == doctest::Approx(pd).epsilon(0.15));
    }
}

TEST_CASE("cutoff selection on hand-built tables") {
    const PenaltyConfig cfg = PenaltyConfig::with_defaults();
    auto record = [](int m, double theta) {
        EstimateRecord r;
        r.m = m;
        r.thetaHat = theta;
        return r;
    };

    PenaltyTable table;
    table.mGrid = {1, 2, 3};
    table.n = 100;
    table.pairs[{1, 2}] = PairEntry{};
    table.pairs[{1, 3}] = PairEntry{};
    table.pairs[{2, 3}] = PairEntry{};
    table.pen = {0.1, 0.2, 0.3};
    const std::vector<EstimateRecord> estimates{record(1, 0.0), record(2, 1.0),
                                                record(3, 1.0)};
    const SelectionResult sel = select_m_hat(estimates, table, cfg);
    CHECK(sel.mHat == 2);
    CHECK(sel.thetaHatAdaptive == 1.0);
    REQUIRE(sel.criterion.size() == 3);
    CHECK(sel.criterion[0] == doctest::Approx(1.1));
    CHECK(sel.criterion[1] == doctest::Approx(0.2));
    CHECK(sel.criterion[2] == doctest::Approx(0.3));

    // Ties break toward the smallest candidate.
    PenaltyTable tie;
    tie.mGrid = {1, 2};
    tie.n = 100;
    tie.pairs[{1, 2}] = PairEntry{};
    tie.pen = {0.5, 0.5};
    const SelectionResult tied =
        select_m_hat({record(1, 0.0), record(2, 0.0)}, tie, cfg);
    CHECK(tied.mHat == 1);

    // The positive-part clip can flip the decision when the comparison term
    // goes negative.
    PenaltyTable flip;
    flip.mGrid = {1, 2};
    flip.n = 100;
    PairEntry pe;
    pe.corr = 0.05;
    flip.pairs[{1, 2}] = pe;
    flip.pen = {0.2, 0.18};
    const std::vector<EstimateRecord> est2{record(1, 0.0), record(2, 0.1)};
    PenaltyConfig literal = cfg;
    literal.positivePart = false;
    CHECK(select_m_hat(est2, flip, literal).mHat == 1);
    PenaltyConfig clipped = cfg;
    clipped.positivePart = true;
    CHECK(select_m_hat(est2, flip, clipped).mHat == 2);

    // Misaligned inputs are rejected.
    CHECK_THROWS_AS(select_m_hat({record(1, 0.0)}, table, cfg), std::invalid_argument);
    CHECK_THROWS_AS(select_m_hat({record(1, 0.0), record(4, 0.0), record(3, 0.0)}, table,
                                 cfg),
                    std::invalid_argument);
}

TEST_CASE("adaptive selection end to end stays on the candidate grid") {
    const LevyModel cp = LevyModel::compound_poisson(1.0, JumpLaw::exponential(1.0));
    const SplitSample sample = sample_increments(cp, 500, 17);
    const PenaltyConfig cfg = PenaltyConfig::for_model(cp);
    const Functional f = Functional::gaussian(0.0, 1.0);
    const std::vector<int> mGrid{1, 2, 4};

    const FrequencyGrid master = spec_with_nodes(128).band_grid(4);
    const GridEcf g = ecf_grid(sample, master);
    const PenaltyField field = penalty_field(g, f, cfg);
    const PenaltyTable table = build_penalty_table(field, Kernel::sinc(), mGrid, cfg);
    std::vector<EstimateRecord> estimates;
    for (const int m : mGrid)
        estimates.push_back(
            kernel_estimate_grid(g, f, Kernel::sinc(), m, cfg.truncation()));
    const SelectionResult sel = select_m_hat(estimates, table, cfg);
    const bool onGrid = sel.mHat == 1 || sel.mHat == 2 || sel.mHat == 4;
    CHECK(onGrid);
    for (std::size_t i = 0; i < mGrid.size(); ++i)
        if (mGrid[i] == sel.mHat) CHECK(sel.thetaHatAdaptive == estimates[i].thetaHat);
}

TEST_CASE("oracle cutoff matches the enumeration oracle") {
    const LevyModel cp = LevyModel::compound_poisson(1.0, JumpLaw::exponential(1.0));
    const PenaltyConfig cfg = PenaltyConfig::for_model(cp);
    const Functional f = Functional::gaussian(0.0, 1.0);
    const std::vector<int> mGrid{1, 2, 4, 8};
    const QuadratureSpec q = spec_with_nodes(128);
    const std::size_t n = 500;

    const OracleSelection sel = oracle_m_star(cp, f, Kernel::sinc(), mGrid, cfg, n, q);
    CHECK(sel.mStar == naive::oracle_m_star(cp, f, Kernel::sinc(), mGrid, cfg, n, q));
    REQUIRE(sel.thetaM.size() == mGrid.size());
    REQUIRE(sel.pen.size() == mGrid.size());
    const int J = 8; // max(8, ceil(128 / 16))
    for (std::size_t i = 0; i < mGrid.size(); ++i) {
        CHECK(sel.thetaM[i] ==
              doctest::Approx(naive::smoothed_target(cp, f, Kernel::sinc(), mGrid[i], q.nodes))
                  .epsilon(1e-10));
        CHECK(sel.pen[i] ==
              doctest::Approx(naive::deterministic_pen(cp, f, Kernel::sinc(), mGrid[i],
                                                       mGrid.back(), J, n, cfg))
                  .epsilon(1e-10));
        CHECK(sel.criterion[i] >= sel.pen[i] * (1.0 - 1e-12));
    }

    CHECK_THROWS_AS(oracle_m_star(cp, f, Kernel::sinc(), {}, cfg, n, q),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle_m_star(cp, f, Kernel::sinc(), {0, 2}, cfg, n, q),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle_m_star(cp, f, Kernel::sinc(), {4, 2}, cfg, n, q),
                    std::invalid_argument);
}
