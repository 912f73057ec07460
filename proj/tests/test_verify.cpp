#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "dbbound/covariance.hpp"
#include "dbbound/errors.hpp"
#include "dbbound/grid.hpp"
#include "dbbound/mac_nf.hpp"
#include "dbbound/random_config.hpp"
#include "dbbound/verify.hpp"

using namespace dbbound;

namespace {
const double kTwoPiE = 2.0 * M_PI * std::exp(1.0);
}

TEST(Epi, UnitParamsHandComputed) {
    const EpiResult r = epi_lower_bound_check(MacNfParams{}, {0.0, 0.0, 0.0});
    // Cov(YF1, YF2 | T) = [[4, 3], [3, 4]], determinant 7; Var(Y | T) = 3.
    EXPECT_NEAR(r.lhs, 0.5 * std::log(kTwoPiE * kTwoPiE * 7.0), 1e-12);
    EXPECT_NEAR(r.rhs, 0.5 * std::log(kTwoPiE * kTwoPiE + 2.0 * kTwoPiE * kTwoPiE * 3.0), 1e-12);
    EXPECT_TRUE(r.ok);
    // Gaussian inputs meet the bound with equality.
    EXPECT_NEAR(r.lhs - r.rhs, 0.0, 1e-12);
}

TEST(Epi, NearFullCorrelation) {
    const double c = 1.0 - 1e-6;
    const EpiResult r = epi_lower_bound_check(MacNfParams{1, 1, 1, 2, 3}, {c * c, c, c});
    EXPECT_TRUE(std::isfinite(r.lhs));
    EXPECT_TRUE(std::isfinite(r.rhs));
    EXPECT_TRUE(r.ok);
}

TEST(Epi, EqualNoiseMatchesCombinedForm) {
    EpiCheckInput in;
    in.h_y_given_t = 0.7;
    in.sigma_z1_2 = in.sigma_z2_2 = 2.5;
    EXPECT_NEAR(epi_rhs(in), epi_rhs_kappa(in), 1e-12);
    EXPECT_DOUBLE_EQ(in.mu(), 0.5);
    EXPECT_DOUBLE_EQ(in.kappa(), 0.8);
}

TEST(Epi, KappaMuIdentities) {
    for (int i = 0; i < 200; ++i) {
        ConfigSampler s(401, "kappa", i);
        EpiCheckInput in;
        in.h_y_given_t = s.uniform(-3.0, 3.0);
        in.sigma_z1_2 = s.variance();
        in.sigma_z2_2 = s.variance();
        EXPECT_GT(in.kappa(), 0.0);
        EXPECT_GT(in.mu(), 0.0);
        EXPECT_LT(in.mu(), 1.0);
        EXPECT_NEAR(in.mu() * in.kappa(), 1.0 / in.sigma_z1_2, 1e-12 / in.sigma_z1_2);
        EXPECT_NEAR((1.0 - in.mu()) * in.kappa(), 1.0 / in.sigma_z2_2, 1e-12 / in.sigma_z2_2);
        EXPECT_NEAR(epi_rhs(in), epi_rhs_kappa(in), 1e-10);
    }
}

TEST(DbGap, MarkovIsZeroForUc) {
    for (int i = 0; i < 200; ++i) {
        ConfigSampler s(403, "uc-markov-gap", i);
        EXPECT_NEAR(db_gap(s.mac_uc(), s.markov_triple()), 0.0, 1e-9);
    }
}

TEST(DbGap, ZeroAtAlphaStar) {
    for (int i = 0; i < 200; ++i) {
        ConfigSampler s(405, "astar-gap", i);
        const MacNfParams p = s.mac_nf();
        const double r1 = s.uniform(-0.9, 0.9);
        const double r2 = s.uniform(-0.9, 0.9);
        const double a = alpha_star(r1, r2, p);
        if (a >= lambda_bound(r1, r2) - 1e-9) continue;
        EXPECT_NEAR(db_gap(p, {r1 * r2 + a, r1, r2}), 0.0, 1e-6) << i;
    }
}

TEST(DbGap, NegativeAtDeltaZeroCorner) {
    const MacNfParams p;
    const double r1 = 0.3;
    const double r2 = 0.4;
    const double lam = lambda_bound(r1, r2);
    ASSERT_LT(g_alpha(lam, r1, r2, p), 0.0);
    // Stay a hair inside the corner so the oracle blocks stay invertible.
    EXPECT_LT(db_gap(p, {r1 * r2 + lam * (1.0 - 1e-9), r1, r2}), 0.0);
}

TEST(Fastpath, Limits) {
    const GridSpec g = default_grid(ModelKind::mac_nf);
    EXPECT_LE(fastpath_equivalence(MacNfParams{1, 1, 1, 1e8, 1e8}, g, g).gap, 1e-3);
    EXPECT_LE(fastpath_equivalence(MacNfParams{1, 1, 1, 1e-8, 1e-8}, g, g).gap, 1e-3);
    const auto unit = fastpath_equivalence(MacNfParams{}, g, g);
    EXPECT_TRUE(unit.ok());
    EXPECT_NEAR(unit.tolerance, 2.0 * 0.5 / 400.0, 1e-15);
}

TEST(Sampler, DeterministicAndSplittable) {
    ConfigSampler a(1, "x", 5);
    ConfigSampler b(1, "x", 5);
    ConfigSampler c(1, "x", 6);
    ConfigSampler d(1, "y", 5);
    const double va = a.uniform(0, 1);
    EXPECT_EQ(va, b.uniform(0, 1));
    EXPECT_NE(va, c.uniform(0, 1));
    EXPECT_NE(va, d.uniform(0, 1));
    EXPECT_NE(mix_seed(1, "x", 5), mix_seed(2, "x", 5));
}

TEST(Sampler, Ranges) {
    for (int i = 0; i < 500; ++i) {
        ConfigSampler s(409, "ranges", i);
        const double v = s.variance();
        EXPECT_GE(v, 1e-2);
        EXPECT_LE(v, 1e2);
        const double pw = s.power();
        EXPECT_GE(pw, 0.1);
        EXPECT_LE(pw, 10.0);
        const double g = s.gain();
        EXPECT_GE(g, 0.0);
        EXPECT_LE(g, 4.0);
        const CorrelationTriple t = s.triple();
        EXPECT_GT(delta(t), 1e-6);
        EXPECT_LE(std::abs(t.rho12), 0.95);
        const CorrelationTriple m = s.markov_triple();
        EXPECT_EQ(m.rho12, m.rho1T * m.rho2T);
        EXPECT_GE(m.rho1T, 0.0);
        EXPECT_NO_THROW(s.mac_nf().validate());
        EXPECT_NO_THROW(s.mac_uc().validate());
        EXPECT_NO_THROW(s.ic_uc().validate());
    }
}

class SuiteTest : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteTest, PassesWithDefaultSeed) {
    const SuiteResult r = run_suite(GetParam(), kDefaultSeed, 100);
    EXPECT_EQ(r.name, GetParam());
    EXPECT_GE(r.draws, 1);
    EXPECT_EQ(r.failed, 0) << r.failing_config;
    EXPECT_EQ(r.passed + r.failed, r.draws);
    EXPECT_LE(r.worst, r.tolerance);
}

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteTest, ::testing::ValuesIn(suite_names()),
                         [](const ::testing::TestParamInfo<std::string>& info) { return info.param; });

TEST(Report, DeterministicJson) {
    const std::string a = run_verification(99, 5).to_json();
    const std::string b = run_verification(99, 5).to_json();
    EXPECT_EQ(a, b);
    const auto doc = nlohmann::json::parse(a);
    EXPECT_EQ(doc["seed"], 99);
    EXPECT_EQ(doc["n"], 5);
    EXPECT_TRUE(doc["passed"].get<bool>());
    EXPECT_EQ(doc["suites"].size(), suite_names().size());
}

TEST(Report, RejectsBadArguments) {
    try {
        run_verification(1, 0);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "n must be ≥ 1");
    }
    EXPECT_THROW(run_suite("no_such_suite", 1, 10), DomainError);
}
