#include <gtest/gtest.h>

#include <cmath>

#include "dbbound/covariance.hpp"
#include "dbbound/errors.hpp"
#include "dbbound/grid.hpp"
#include "dbbound/mac_nf.hpp"
#include "dbbound/random_config.hpp"
#include "dbbound/units.hpp"
#include "dbbound/verify.hpp"

using namespace dbbound;

TEST(Delta, IdentityCase) { EXPECT_DOUBLE_EQ(delta({0.0, 0.0, 0.0}), 1.0); }

TEST(Delta, OnlyRho12) { EXPECT_NEAR(delta({0.5, 0.0, 0.0}), 0.75, 1e-15); }

TEST(Delta, MarkovFactorizes) { EXPECT_NEAR(delta({0.48, 0.6, 0.8}), 0.2304, 1e-14); }

TEST(LambdaBound, Examples) {
    EXPECT_DOUBLE_EQ(lambda_bound(0.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(lambda_bound(1.0, 0.3), 0.0);
    EXPECT_NEAR(lambda_bound(0.6, 0.8), 0.48, 1e-15);
}

TEST(RequireValid, RejectsOutOfRange) {
    EXPECT_THROW(require_valid({1.2, 0.0, 0.0}), InvalidCorrelation);
    EXPECT_THROW(require_valid({0.9, 0.9, -0.9}), InvalidCorrelation);
    EXPECT_NO_THROW(require_valid({0.48, 0.6, 0.8}));
}

TEST(Delta, RangeAndSwapSymmetry) {
    for (int i = 0; i < 1000; ++i) {
        ConfigSampler s(7, "delta", i);
        const CorrelationTriple r = s.triple(1.0, 0.0);
        const double d = delta(r);
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0);
        EXPECT_NEAR(d, delta({r.rho12, r.rho2T, r.rho1T}), 1e-15);
    }
}

TEST(JointSystem, MacNfUnit) {
    const auto sys = build_joint_system(MacNfParams{}, {0.0, 0.0, 0.0});
    EXPECT_DOUBLE_EQ(sys.variance(Var::Y), 3.0);
    EXPECT_DOUBLE_EQ(sys.variance(Var::YF1), 4.0);
    EXPECT_DOUBLE_EQ(sys.variance(Var::YF2), 4.0);
    EXPECT_DOUBLE_EQ(sys.covariance(Var::Y, Var::YF1), 3.0);
}

TEST(JointSystem, MacUcUnit) {
    const auto sys = build_joint_system(MacUcParams{}, {0.0, 0.0, 0.0});
    EXPECT_DOUBLE_EQ(sys.variance(Var::Y), 3.0);
    EXPECT_DOUBLE_EQ(sys.variance(Var::YF1), 2.0);
    EXPECT_DOUBLE_EQ(sys.covariance(Var::Y, Var::YF1), 1.0);
}

TEST(JointSystem, IcUcUnit) {
    const auto sys = build_joint_system(IcUcParams{}, {0.0, 0.0, 0.0});
    EXPECT_DOUBLE_EQ(sys.variance(Var::Y1), 3.0);
    EXPECT_DOUBLE_EQ(sys.variance(Var::Y2), 3.0);
    EXPECT_DOUBLE_EQ(sys.covariance(Var::Y1, Var::Y2), 2.0);
}

TEST(JointSystem, RejectsInfiniteNoise) {
    MacNfParams p;
    p.sigma_z1_2 = kInfiniteVariance;
    EXPECT_THROW(build_joint_system(p, {0.0, 0.0, 0.0}), InputError);
}

TEST(JointSystem, MissingVariableThrows) {
    const auto sys = build_joint_system(MacNfParams{}, {0.0, 0.0, 0.0});
    EXPECT_FALSE(sys.contains(Var::Y1));
    EXPECT_THROW((void)sys.index(Var::Y1), std::out_of_range);
}

TEST(JointSystem, PsdOnSweepLattice) {
    const MacNfParams nf;
    const MacUcParams uc;
    const IcUcParams ic;
    const auto axis = rho_lattice(0.1, RhoRange::symmetric);
    for (double a : axis) {
        for (double b : axis) {
            for (double c : axis) {
                const CorrelationTriple r{c, a, b};
                if (delta(r) < 0.0) continue;
                EXPECT_TRUE(build_joint_system(nf, r).is_psd());
                EXPECT_TRUE(build_joint_system(uc, r).is_psd());
                EXPECT_TRUE(build_joint_system(ic, r).is_psd());
            }
        }
    }
}

TEST(GaussianCmi, IndependentInputs) {
    const auto sys = build_joint_system(MacNfParams{}, {0.0, 0.0, 0.0});
    EXPECT_NEAR(gaussian_cmi(sys, {Var::X1}, {Var::X2}), 0.0, 1e-15);
}

TEST(GaussianCmi, UnitSnr) {
    const auto sys = build_joint_system(MacNfParams{}, {0.0, 0.0, 0.0});
    EXPECT_NEAR(gaussian_cmi(sys, {Var::X1}, {Var::Y}, {Var::X2}), 0.5, 1e-12);
}

TEST(GaussianCmi, MatchesClosedFormF1) {
    const MacNfParams p;
    const CorrelationTriple r{0.25, 0.5, 0.5};
    const auto sys = build_joint_system(p, r);
    const double oracle = gaussian_cmi(sys, {Var::X1}, {Var::Y}, {Var::X2, Var::T});
    EXPECT_NEAR(oracle, half_log1p(f1_nf(r, p) / p.sigma_z2), 1e-12);
    // (1 - 0.25) - 0.0^2 / 0.75 = 0.75
    EXPECT_NEAR(oracle, 0.5 * std::log2(1.75), 1e-12);
}

TEST(GaussianCmi, NatsUnit) {
    const auto sys = build_joint_system(MacNfParams{}, {0.0, 0.0, 0.0});
    set_info_unit(InfoUnit::nats);
    const double v = gaussian_cmi(sys, {Var::X1}, {Var::Y}, {Var::X2});
    set_info_unit(InfoUnit::bits);
    EXPECT_NEAR(v, 0.5 * std::log(2.0), 1e-12);
}

TEST(GaussianCmi, SingularConditioningBlockIsHandled) {
    // At rho1T = 1, X1 is a function of T, so the block (X1, T) is singular.
    const auto sys = build_joint_system(MacNfParams{}, {0.0, 1.0, 0.0});
    EXPECT_NEAR(gaussian_cmi(sys, {Var::X2}, {Var::Y}, {Var::X1, Var::T}), 0.5, 1e-9);
}

TEST(GaussianCmi, DegenerateTargetThrows) {
    const auto sys = build_joint_system(MacNfParams{}, {0.0, 1.0, 0.0});
    EXPECT_THROW(gaussian_cmi(sys, {Var::X1}, {Var::Y}, {Var::T}), SingularConditioning);
}

TEST(GaussianCmi, TimeSharingPowerIsIrrelevant) {
    for (int i = 0; i < 200; ++i) {
        ConfigSampler s(11, "pt", i);
        const MacNfParams p = s.mac_nf();
        const CorrelationTriple r = s.triple();
        const auto a = build_joint_system(p, r, 1.0);
        const auto b = build_joint_system(p, r, s.uniform(0.01, 100.0));
        EXPECT_NEAR(gaussian_cmi(a, {Var::X1}, {Var::YF1, Var::YF2}, {Var::X2, Var::T}),
                    gaussian_cmi(b, {Var::X1}, {Var::YF1, Var::YF2}, {Var::X2, Var::T}), 1e-10);
        EXPECT_NEAR(gaussian_cmi(a, {Var::X1, Var::X2}, {Var::Y}, {Var::T}),
                    gaussian_cmi(b, {Var::X1, Var::X2}, {Var::Y}, {Var::T}), 1e-10);
    }
}

TEST(GaussianCmi, ChainRuleRewrite) {
    for (int i = 0; i < 1000; ++i) {
        ConfigSampler s(13, "chain", i);
        const MacNfParams p = s.mac_nf();
        const CorrelationTriple r = s.triple();
        EXPECT_NEAR(db_gap(p, r), db_gap_direct(p, r), 1e-9);
    }
}

TEST(GaussianCmi, Nonnegative) {
    for (int i = 0; i < 300; ++i) {
        ConfigSampler s(17, "nonneg", i);
        const IcUcParams p = s.ic_uc();
        const auto sys = build_joint_system(p, s.triple());
        EXPECT_GE(gaussian_cmi(sys, {Var::X1}, {Var::Y1, Var::YF2}, {Var::X2, Var::T}), 0.0);
        EXPECT_GE(gaussian_cmi(sys, {Var::X1}, {Var::X2}, {Var::T}), 0.0);
    }
}

TEST(GaussianEntropy, ScalarGaussian) {
    const auto sys = build_joint_system(MacNfParams{}, {0.0, 0.0, 0.0});
    const double two_pi_e = 2.0 * M_PI * std::exp(1.0);
    EXPECT_NEAR(gaussian_entropy_nats(sys, {Var::Y}), 0.5 * std::log(two_pi_e * 3.0), 1e-12);
}
