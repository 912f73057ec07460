#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dbbound/covariance.hpp"
#include "dbbound/errors.hpp"
#include "dbbound/grid.hpp"
#include "dbbound/mac_nf.hpp"
#include "dbbound/random_config.hpp"
#include "dbbound/regions.hpp"
#include "dbbound/units.hpp"
#include "dbbound/verify.hpp"

using namespace dbbound;

namespace {

MacNfParams unit_with_feedback(double s) { return MacNfParams{1.0, 1.0, 1.0, s, s}; }

const GridSpec kGrid = default_grid(ModelKind::mac_nf);

// Two-sided inclusion of the default-grid frontiers.
void expect_frontiers_close(const Family& a, const Family& b, double tol) {
    const auto c = compare_frontiers(a, b, tol);
    EXPECT_TRUE(c.a_in_b) << "excess " << c.max_excess_a;
    EXPECT_TRUE(c.b_in_a) << "excess " << c.max_excess_b;
}

// Expanded quartic at rho1T = rho2T = 0.
double g_at_origin(double alpha, double p1, double p2, double eta) {
    const double s = 1.0 - alpha * alpha;
    return p1 * s + p2 * s + p1 * p2 * s * s / eta - (p1 + p2 + 2.0 * alpha * std::sqrt(p1 * p2));
}

double bisect_root(double lo, double hi, const std::function<double(double)>& f) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(EtaEff, Cases) {
    EXPECT_DOUBLE_EQ(eta_eff(unit_with_feedback(2.0)), 2.0);
    EXPECT_DOUBLE_EQ(eta_eff(MacNfParams{1, 1, 1, 0.0, 3.0}), 1.0);
    EXPECT_DOUBLE_EQ(eta_eff(MacNfParams{1, 1, 1, kInfiniteVariance, 3.0}), 4.0);
    EXPECT_TRUE(std::isinf(eta_eff(unit_with_feedback(kInfiniteVariance))));
    EXPECT_DOUBLE_EQ(nf_core(MacNfCommonParams{1, 1, 1, 2.5}).eta, 3.5);
}

TEST(Params, Validation) {
    EXPECT_THROW(nf_core(MacNfParams{0.0, 1, 1, 1, 1}), InvalidParams);
    EXPECT_THROW(nf_core(MacNfParams{1, 1, 1, -1.0, 1}), InvalidParams);
    EXPECT_THROW(nf_core(MacNfParams{1, 1, kInfiniteVariance, 1, 1}), InvalidParams);
    EXPECT_THROW(nf_core(MacNfParams{1, 1, std::nan(""), 1, 1}), InvalidParams);
}

TEST(RateTerms, Independent) {
    const CorrelationTriple r{0.0, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(f1_nf(r, 1.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(f2_nf(r, 1.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(f3_nf(r, 1.0, 1.0), 2.0);
}

TEST(RateTerms, MarkovFactorization) {
    const CorrelationTriple r{0.48, 0.6, 0.8};
    EXPECT_NEAR(f3_nf(r, 1.0, 1.0), 1.0, 1e-14);
    EXPECT_NEAR(f1_nf(r, 1.0, 1.0), 0.64, 1e-14);
    EXPECT_NEAR(f2_nf(r, 1.0, 1.0), 0.36, 1e-14);
}

TEST(RateTerms, DegenerateDenominator) {
    // rho2T = 1 forces rho12 = rho1T; f1 falls back to (1 - rho1T^2) P1.
    EXPECT_NEAR(f1_nf({0.3, 0.3, 1.0}, 2.0, 1.0), 2.0 * (1.0 - 0.09), 1e-12);
    EXPECT_GE(f1_nf({0.3, 0.3, 1.0 - 1e-14}, 1.0, 1.0), 0.0);
}

TEST(RateTerms, MatchOracle) {
    for (int i = 0; i < 1000; ++i) {
        ConfigSampler s(101, "nf-oracle", i);
        const MacNfParams p = s.mac_nf();
        const CorrelationTriple r = s.triple();
        const auto sys = build_joint_system(p, r);
        EXPECT_NEAR(half_log1p(f1_nf(r, p) / p.sigma_z2), gaussian_cmi(sys, {Var::X1}, {Var::Y}, {Var::X2, Var::T}),
                    1e-9);
        EXPECT_NEAR(half_log1p(f2_nf(r, p) / p.sigma_z2), gaussian_cmi(sys, {Var::X2}, {Var::Y}, {Var::X1, Var::T}),
                    1e-9);
        EXPECT_NEAR(half_log1p(f3_nf(r, p) / p.sigma_z2),
                    gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y}, {Var::T}), 1e-9);
    }
}

TEST(Feasibility, Examples) {
    EXPECT_TRUE(db_feasible_nf({0.0, 0.0, 0.0}, unit_with_feedback(2.0)));
    EXPECT_TRUE(db_feasible_nf({0.42, 0.6, 0.7}, MacNfParams{3, 0.5, 2, 0.1, 7}));
    EXPECT_FALSE(db_feasible_nf({1.0, 0.0, 0.0}, unit_with_feedback(1.0)));
}

TEST(Feasibility, NoFeedbackAllowsOnlyMarkovSide) {
    const MacNfParams p = unit_with_feedback(kInfiniteVariance);
    EXPECT_TRUE(db_feasible_nf({0.0, 0.0, 0.0}, p));
    EXPECT_FALSE(db_feasible_nf({0.01, 0.0, 0.0}, p));
}

TEST(Feasibility, ClosedGapMatchesOracle) {
    for (int i = 0; i < 1000; ++i) {
        ConfigSampler s(103, "nf-gap", i);
        const MacNfParams p = s.mac_nf();
        const CorrelationTriple r = s.triple();
        const double oracle = db_gap(p, r);
        EXPECT_NEAR(db_gap_nf_closed(r, p), oracle, 1e-9);
        if (std::abs(oracle) > 1e-9) {
            EXPECT_EQ(db_feasible_nf(r, p), oracle > 0.0);
        }
    }
}

TEST(GAlpha, Endpoints) {
    EXPECT_NEAR(g_alpha(0.0, 0.0, 0.0, unit_with_feedback(2.0)), 0.5, 1e-15);
    EXPECT_NEAR(g_alpha(1.0, 0.0, 0.0, unit_with_feedback(1.0)), -4.0, 1e-12);
    EXPECT_THROW(g_alpha(1.1, 0.0, 0.0, unit_with_feedback(1.0)), DomainError);
    EXPECT_THROW(dg_dalpha(-0.1, 0.0, 0.0, unit_with_feedback(1.0)), DomainError);
}

TEST(GAlpha, MatchesExpandedQuartic) {
    const MacNfParams p{2.0, 0.5, 1.0, 1.0, 3.0};
    const double eta = eta_eff(p);
    for (double a = 0.0; a <= 1.0; a += 0.01) {
        EXPECT_NEAR(g_alpha(a, 0.0, 0.0, p), g_at_origin(a, p.p1, p.p2, eta), 1e-12);
    }
}

TEST(GAlpha, DerivativeMatchesFiniteDifference) {
    const double h = 1e-6;
    for (int i = 0; i < 1000; ++i) {
        ConfigSampler s(107, "dg", i);
        const MacNfParams p = s.mac_nf();
        const double r1 = s.uniform(-0.95, 0.95);
        const double r2 = s.uniform(-0.95, 0.95);
        const double lam = lambda_bound(r1, r2);
        const double a = s.uniform(h, lam - h);
        const double fd = (g_alpha(a + h, r1, r2, p) - g_alpha(a - h, r1, r2, p)) / (2.0 * h);
        const double dg = dg_dalpha(a, r1, r2, p);
        EXPECT_LE(dg, 0.0);
        EXPECT_NEAR(dg, fd, 1e-6 * std::max(1.0, std::abs(dg)));
    }
}

TEST(AlphaStar, ReferenceValue) {
    const double a = alpha_star(0.0, 0.0, unit_with_feedback(1.0));
    EXPECT_NEAR(a, 0.2391, 1e-3);
    const double root = bisect_root(0.0, 1.0, [](double x) { return g_at_origin(x, 1, 1, 1.5); });
    EXPECT_NEAR(a, root, 1e-9);
}

TEST(AlphaStar, VanishesWithoutFeedback) {
    EXPECT_LE(alpha_star(0.0, 0.0, unit_with_feedback(1e12)), 1e-3);
    EXPECT_DOUBLE_EQ(alpha_star(1.0, 0.3, unit_with_feedback(1.0)), 0.0);
}

TEST(AlphaStar, RootOfG) {
    for (int i = 0; i < 300; ++i) {
        ConfigSampler s(109, "astar", i);
        const MacNfParams p = s.mac_nf();
        const double r1 = s.uniform(-0.95, 0.95);
        const double r2 = s.uniform(-0.95, 0.95);
        const double a = alpha_star(r1, r2, p);
        const double lam = lambda_bound(r1, r2);
        ASSERT_GE(a, 0.0);
        ASSERT_LE(a, lam);
        EXPECT_GE(g_alpha(std::max(0.0, a - 1e-9), r1, r2, p), 0.0);
        if (a < lam - 1e-9) {
            EXPECT_LT(g_alpha(a + 1e-9, r1, r2, p), 0.0);
        }
    }
}

TEST(NoFeedback, UnitPentagon) {
    const RatePolytope p = nofeedback_capacity(MacNfParams{});
    EXPECT_DOUBLE_EQ(p.r1_cap(), 0.5);
    EXPECT_DOUBLE_EQ(p.r2_cap(), 0.5);
    EXPECT_NEAR(p.sum_cap(), 0.5 * std::log2(3.0), 1e-15);
    EXPECT_NEAR(p.sum_cap(), 0.79248, 1e-5);
}

TEST(DbRegion, LargeFeedbackNoiseGivesNoFeedbackRegion) {
    const MacNfParams p = unit_with_feedback(1e8);
    expect_frontiers_close(db_region_nf(p, kGrid), Family::single("nofb", nofeedback_capacity(p)), 1e-3);
    EXPECT_NEAR(max_sum_rate(db_region_nf(p, kGrid)), 0.5 * std::log2(3.0), 1e-3);
}

TEST(DbRegion, SmallFeedbackNoiseGivesCutset) {
    const MacNfParams p = unit_with_feedback(1e-8);
    expect_frontiers_close(db_region_nf(p, kGrid), cutset_region_nf(p, kGrid), 1e-3);
}

TEST(DbRegion, IntermediateNoiseStrictlyBetween) {
    const MacNfParams p = unit_with_feedback(5.0);
    const double db = max_sum_rate(db_region_nf(p, kGrid));
    EXPECT_GT(db, 0.5 * std::log2(3.0) + 1e-4);
    EXPECT_LT(db, max_sum_rate(cutset_region_nf(p, kGrid)) - 1e-4);
}

TEST(DbRegion, NestingInFeedbackNoise) {
    const double sigmas[] = {10.0, 5.0, 2.0};
    std::vector<Family> fams;
    for (double s : sigmas) fams.push_back(db_region_nf(unit_with_feedback(s), kGrid));
    fams.push_back(cutset_region_nf(MacNfParams{}, kGrid));
    for (std::size_t i = 0; i + 1 < fams.size(); ++i) {
        // Inner lattices of different noise levels do not align exactly.
        const auto c = compare_frontiers(fams[i], fams[i + 1], 1e-4);
        EXPECT_TRUE(c.a_in_b) << i << " excess " << c.max_excess_a;
        EXPECT_GE(max_sum_rate(fams[i + 1]) - max_sum_rate(fams[i]), 1e-4) << i;
    }
}

TEST(DbRegion, InsideCutsetExactly) {
    for (double s : {0.3, 1.0, 2.0, 5.0, 10.0}) {
        const MacNfParams p = unit_with_feedback(s);
        EXPECT_TRUE(compare_frontiers(db_region_nf(p, kGrid), cutset_region_nf(p, kGrid), 1e-9).a_in_b) << s;
    }
}

TEST(DbRegion, FastPathMatchesBruteForce) {
    for (double s : {0.3, 1.0, 2.0, 5.0, 10.0}) {
        const auto r = fastpath_equivalence(unit_with_feedback(s), kGrid, kGrid);
        EXPECT_TRUE(r.ok()) << s << " gap " << r.gap << " tol " << r.tolerance;
    }
}

TEST(DbRegion, BruteForceNeverExceedsFastPathByMuch) {
    const MacNfParams p = unit_with_feedback(2.0);
    const auto c = compare_frontiers(db_region_nf(p, kGrid, NfSweep::brute_force), db_region_nf(p, kGrid), 1e-3);
    EXPECT_TRUE(c.a_in_b) << c.max_excess_a;
}

TEST(CommonFeedback, NoiselessMatchesDistinctNoiseless) {
    const auto a = union_frontier(db_region_nf_common(MacNfCommonParams{1, 1, 1, 0.0}, kGrid));
    const auto b = union_frontier(db_region_nf(unit_with_feedback(0.0), kGrid));
    EXPECT_EQ(frontier_to_csv(a), frontier_to_csv(b));
}

TEST(CommonFeedback, FeasibleSetIsSmaller) {
    const NfCore common = nf_core(MacNfCommonParams{1, 1, 1, 1.0});
    const NfCore distinct = nf_core(unit_with_feedback(1.0));
    const auto axis = rho_lattice(0.05, RhoRange::symmetric);
    int strict = 0;
    for (double a : axis) {
        for (double b : axis) {
            for (double c : axis) {
                const CorrelationTriple r{c, a, b};
                if (delta(r) < 0.0) continue;
                const bool in_common = db_feasible_nf(r, common);
                const bool in_distinct = db_feasible_nf(r, distinct);
                if (in_common) {
                    EXPECT_TRUE(in_distinct);
                }
                if (in_distinct && !in_common) ++strict;
            }
        }
    }
    EXPECT_GT(strict, 0);
}

TEST(CommonFeedback, LargeNoiseGivesNoFeedbackRegion) {
    expect_frontiers_close(db_region_nf_common(MacNfCommonParams{1, 1, 1, 1e8}, kGrid),
                           Family::single("nofb", nofeedback_capacity(MacNfParams{})), 1e-3);
}

TEST(Cutset, IndependentPentagon) {
    const RatePolytope p = nf_polytope({0.0, 0.0, 0.0}, nf_core(MacNfParams{}));
    EXPECT_DOUBLE_EQ(p.r1_cap(), 0.5);
    EXPECT_NEAR(p.sum_cap(), 0.5 * std::log2(3.0), 1e-15);
}

TEST(Cutset, InsensitiveToFeedbackNoise) {
    const std::string a = frontier_to_csv(union_frontier(cutset_region_nf(unit_with_feedback(2.0), kGrid)));
    const std::string b = frontier_to_csv(union_frontier(cutset_region_nf(unit_with_feedback(10.0), kGrid)));
    const std::string c = frontier_to_csv(union_frontier(cutset_region_nf(unit_with_feedback(1e-3), kGrid)));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(Cutset, MaxSumAtCornerCrossing) {
    // 1/2 log(3 + 2 rho) = log(2 - rho^2)  <=>  (2 - rho^2)^2 = 3 + 2 rho.
    const double rho = bisect_root(0.0, 1.0, [](double r) { return (2 - r * r) * (2 - r * r) - (3 + 2 * r); });
    const double expected = 0.5 * std::log2(3.0 + 2.0 * rho);
    EXPECT_NEAR(max_sum_rate(cutset_region_nf(MacNfParams{}, kGrid)), expected, 1e-9);
    EXPECT_NEAR(ozarow_rho_star(MacNfParams{}), rho, 1e-9);
}

TEST(Ozarow, AtLeastNoFeedback) {
    const MacNfParams p{2.0, 0.7, 1.3, 1.0, 1.0};
    EXPECT_GE(max_sum_rate(ozarow_reference(p, kGrid)), nofeedback_capacity(p).max_sum());
}

TEST(Ozarow, MatchesNoiselessFeedbackDb) {
    const MacNfParams p = unit_with_feedback(1e-8);
    expect_frontiers_close(ozarow_reference(p, kGrid), db_region_nf(p, kGrid), 1e-3);
}
