#include <gtest/gtest.h>

#include <cmath>

#include "dbbound/covariance.hpp"
#include "dbbound/errors.hpp"
#include "dbbound/grid.hpp"
#include "dbbound/mac_uc.hpp"
#include "dbbound/random_config.hpp"
#include "dbbound/regions.hpp"
#include "dbbound/units.hpp"
#include "dbbound/verify.hpp"

using namespace dbbound;

namespace {

const GridSpec kGrid = default_grid(ModelKind::mac_uc);

MacUcParams with_coop_noise(double s) {
    MacUcParams p;
    p.sigma_z1_2 = p.sigma_z2_2 = s;
    return p;
}

GridSpec coarse() {
    GridSpec g;
    g.step = 0.05;
    g.fine_step = 0.01;
    return g;
}

}  // namespace

TEST(UcTerms, UnitParams) {
    const MacUcParams p;
    EXPECT_DOUBLE_EQ(beta_uc(p), 3.0);
    EXPECT_DOUBLE_EQ(f1_uc(0.0, p), 2.0);
    EXPECT_DOUBLE_EQ(f2_uc(0.0, p), 2.0);
    EXPECT_DOUBLE_EQ(f3_uc(0.0, 0.0, p), 7.0);
    EXPECT_DOUBLE_EQ(f4_uc(0.0, 0.0, p), 2.0);
}

TEST(UcTerms, FullCorrelation) {
    const MacUcParams p;
    EXPECT_DOUBLE_EQ(f1_uc(1.0, p), 0.0);
    EXPECT_DOUBLE_EQ(f2_uc(1.0, p), 0.0);
    EXPECT_DOUBLE_EQ(f3_uc(1.0, 1.0, p), 0.0);
    EXPECT_DOUBLE_EQ(f4_uc(1.0, 1.0, p), 4.0);
    EXPECT_NEAR(half_log1p(f4_uc(1.0, 1.0, p)), 0.5 * std::log2(5.0), 1e-15);
}

TEST(UcTerms, InfiniteCooperationNoise) {
    const MacUcParams p = with_coop_noise(kInfiniteVariance);
    EXPECT_DOUBLE_EQ(beta_uc(p), 0.0);
    EXPECT_DOUBLE_EQ(f1_uc(0.0, p), 1.0);
}

TEST(UcTerms, OneSidedCooperationStaysFinite) {
    MacUcParams p;
    p.h12 = 2.0;
    p.h21 = 0.0;
    EXPECT_TRUE(std::isfinite(beta_uc(p)));
    EXPECT_DOUBLE_EQ(f2_uc(0.0, p), 1.0);
    EXPECT_GT(max_sum_rate(db_region_uc(p, kGrid)), nocoop_capacity(p).max_sum());
}

TEST(UcTerms, Validation) {
    MacUcParams p;
    p.h12 = -1.0;
    EXPECT_THROW(beta_uc(p), InvalidParams);
    p = MacUcParams{};
    p.sigma_z2 = 0.0;
    EXPECT_THROW(beta_uc(p), InvalidParams);
}

TEST(UcTerms, MatchOracle) {
    for (int i = 0; i < 1000; ++i) {
        ConfigSampler s(201, "uc-oracle", i);
        const MacUcParams p = s.mac_uc();
        const CorrelationTriple r = s.markov_triple();
        const auto sys = build_joint_system(p, r);
        EXPECT_NEAR(half_log1p(f1_uc(r.rho1T, p)),
                    gaussian_cmi(sys, {Var::X1}, {Var::Y, Var::YF2}, {Var::X2, Var::T}), 1e-9);
        EXPECT_NEAR(half_log1p(f2_uc(r.rho2T, p)),
                    gaussian_cmi(sys, {Var::X2}, {Var::Y, Var::YF1}, {Var::X1, Var::T}), 1e-9);
        EXPECT_NEAR(half_log1p(f3_uc(r.rho1T, r.rho2T, p)),
                    gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y, Var::YF1, Var::YF2}, {Var::T}), 1e-9);
        EXPECT_NEAR(half_log1p(f4_uc(r.rho1T, r.rho2T, p)), gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y}), 1e-9);
    }
}

TEST(UcTerms, MarkovCharacterization) {
    for (int i = 0; i < 1000; ++i) {
        ConfigSampler s(203, "uc-markov", i);
        const MacUcParams p = s.mac_uc();
        CorrelationTriple r = s.markov_triple();
        if (s.coin()) {
            const double lam = lambda_bound(r.rho1T, r.rho2T);
            r.rho12 = std::clamp(s.uniform(r.rho1T * r.rho2T - lam, r.rho1T * r.rho2T + lam), -0.95, 0.95);
            if (delta(r) <= 1e-9) continue;
        }
        const bool zero_gap = std::abs(db_gap(p, r)) <= 1e-9;
        const bool markov = std::abs(r.rho12 - r.rho1T * r.rho2T) <= 1e-6;
        EXPECT_EQ(zero_gap, markov) << i;
    }
}

TEST(UcLimits, TotalCooperationLine) {
    EXPECT_NEAR(total_coop_line(MacUcParams{}), 0.5 * std::log2(5.0), 1e-15);
    EXPECT_NEAR(total_coop_line(MacUcParams{}), 1.16096, 1e-5);
    const MacUcParams p = with_coop_noise(1e-8);
    EXPECT_NEAR(max_sum_rate(db_region_uc(p, kGrid)), 0.5 * std::log2(5.0), 1e-3);
    EXPECT_NEAR(max_sum_rate(cutset_region_uc(p, kGrid)), 0.5 * std::log2(5.0), 1e-3);
    // Frontier collapses to the line R1 + R2 = C.
    const auto f = union_frontier(db_region_uc(p, kGrid));
    for (const auto& s : f.samples) EXPECT_NEAR(s.r1 + s.r2, 0.5 * std::log2(5.0), 1e-3);
}

TEST(UcLimits, NoCooperation) {
    const MacUcParams p = with_coop_noise(1e8);
    const RatePolytope nocoop = nocoop_capacity(p);
    EXPECT_NEAR(nocoop.sum_cap(), 0.5 * std::log2(3.0), 1e-15);
    const auto c = compare_frontiers(db_region_uc(p, kGrid), Family::single("nocoop", nocoop), 1e-3);
    EXPECT_TRUE(c.a_in_b);
    EXPECT_TRUE(c.b_in_a);
    EXPECT_GE(max_sum_rate(cutset_region_uc(p, kGrid)) - nocoop.max_sum(), 0.05);
}

TEST(UcCutset, FullCorrelationPentagon) {
    const RatePolytope p = uc_cutset_polytope(1.0, MacUcParams{});
    EXPECT_NEAR(p.sum_cap(), 0.5 * std::log2(5.0), 1e-12);
    EXPECT_NEAR(p.r1_cap(), 0.0, 1e-12);
    EXPECT_NEAR(p.r2_cap(), 0.0, 1e-12);
}

TEST(UcCutset, MatchesOracle) {
    for (int i = 0; i < 300; ++i) {
        ConfigSampler s(207, "uc-cs", i);
        const MacUcParams p = s.mac_uc();
        const double rho = s.uniform(0.0, 0.95);
        const RatePolytope a = uc_cutset_polytope(rho, p);
        const RatePolytope b = uc_cutset_oracle_polytope(rho, p);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a.constraints()[k].c, b.constraints()[k].c, 1e-9);
    }
}

TEST(UcRegion, NoCooperationInsideDb) {
    for (double s : {0.5, 1.0, 20.0}) {
        const MacUcParams p = with_coop_noise(s);
        EXPECT_TRUE(compare_frontiers(Family::single("nocoop", nocoop_capacity(p)), db_region_uc(p, kGrid), 1e-9).a_in_b);
    }
}

TEST(UcRegion, DbInsideCutsetRandom) {
    for (int i = 0; i < 50; ++i) {
        ConfigSampler s(211, "uc-nest", i);
        const MacUcParams p = s.mac_uc();
        const auto c = compare_frontiers(db_region_uc(p, coarse()), cutset_region_uc(p, coarse()), 1e-9);
        EXPECT_TRUE(c.a_in_b) << i << " excess " << c.max_excess_a;
        if (std::isfinite(p.sigma_z1_2) && std::isfinite(p.sigma_z2_2)) {
            EXPECT_GT(max_sum_rate(cutset_region_uc(p, coarse())), max_sum_rate(db_region_uc(p, coarse()))) << i;
        }
    }
}

TEST(UcRegion, HighPowerCutsetStrictlyLarger) {
    MacUcParams p;
    p.p1 = p.p2 = 5.0;
    p.sigma_z2 = 2.0;
    const auto c = compare_frontiers(db_region_uc(p, kGrid), cutset_region_uc(p, kGrid), 1e-9);
    EXPECT_TRUE(c.a_in_b);
    EXPECT_FALSE(c.b_in_a);
    EXPECT_GT(max_sum_rate(cutset_region_uc(p, kGrid)), max_sum_rate(db_region_uc(p, kGrid)) + 1e-4);
}

TEST(UcRegion, NoisyCooperationSumGap) {
    const MacUcParams p = with_coop_noise(20.0);
    EXPECT_GE(max_sum_rate(cutset_region_uc(p, kGrid)) - max_sum_rate(db_region_uc(p, kGrid)), 1e-3);
}

TEST(UcRegion, ShrinksWithCooperationNoise) {
    const double ladder[] = {0.5, 1.0, 2.0, 5.0, 20.0};
    for (int which = 0; which < 2; ++which) {
        for (std::size_t i = 0; i + 1 < std::size(ladder); ++i) {
            MacUcParams lo;
            MacUcParams hi;
            (which == 0 ? lo.sigma_z1_2 : lo.sigma_z2_2) = ladder[i];
            (which == 0 ? hi.sigma_z1_2 : hi.sigma_z2_2) = ladder[i + 1];
            EXPECT_TRUE(compare_frontiers(db_region_uc(hi, coarse()), db_region_uc(lo, coarse()), 1e-12).a_in_b)
                << which << " " << ladder[i];
        }
    }
}

TEST(UcRegion, OracleFamilyAgrees) {
    MacUcParams p;
    p.h12 = 3.0;
    p.h21 = 2.0;
    const auto c = compare_frontiers(db_region_uc_oracle(p, coarse()), db_region_uc(p, coarse()), 1e-9);
    EXPECT_TRUE(c.a_in_b) << c.max_excess_a;
    EXPECT_TRUE(c.b_in_a) << c.max_excess_b;
}
