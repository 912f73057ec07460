#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dbbound/covariance.hpp"
#include "dbbound/grid.hpp"
#include "dbbound/params.hpp"
#include "dbbound/regions.hpp"

namespace dbbound {

// Inputs of the entropy-power lower bound on h(Y_F1, Y_F2 | T).
struct EpiCheckInput {
    double h_y_given_t = 0.0;  // nats
    double sigma_z1_2 = 1.0;
    double sigma_z2_2 = 1.0;

    // (s1 + s2) / (s1 s2)
    double kappa() const;
    // s2 / (s1 + s2)
    double mu() const;
};

// 1/2 ln((2 pi e)^2 s1 s2 + 2 pi e (s1 + s2) exp(2 h(Y|T))).
double epi_rhs(const EpiCheckInput& in);
// Same bound through the combined observation mu Y_F1 + (1 - mu) Y_F2
// (noise variance 1/kappa) and the difference Y_F1 - Y_F2.
double epi_rhs_kappa(const EpiCheckInput& in);

struct EpiResult {
    double lhs = 0.0;  // h(Y_F1, Y_F2 | T), nats
    double rhs = 0.0;
    double rhs_kappa = 0.0;
    bool ok = false;  // lhs >= rhs - 1e-12
};

EpiResult epi_lower_bound_check(const MacNfParams& p, const CorrelationTriple& rho);

// I(X1;X2|Y_F1,Y_F2,T) - I(X1;X2|T), evaluated as
// I(X1;Y_F1,Y_F2|X2,T) - I(X1;Y_F1,Y_F2|T) so it stays finite when delta = 0.
double db_gap(const ChannelParams& params, const CorrelationTriple& rho);
// The same quantity from its defining conditional informations.
double db_gap_direct(const ChannelParams& params, const CorrelationTriple& rho);

// Rate bounds computed from the joint covariance, in the same constraint
// order as the closed-form polytopes.
RatePolytope nf_oracle_polytope(const CorrelationTriple& rho, const MacNfParams& p);
RatePolytope uc_oracle_polytope(const CorrelationTriple& rho, const MacUcParams& p);
RatePolytope ic_oracle_polytope(const CorrelationTriple& rho, const IcUcParams& p);
RatePolytope nf_cutset_oracle_polytope(double rho, const MacNfParams& p);
RatePolytope uc_cutset_oracle_polytope(double rho, const MacUcParams& p);
RatePolytope ic_cutset_oracle_polytope(double rho, const IcUcParams& p);

// Dependence-balance regions rebuilt from the oracle alone: rho1T, rho2T on
// the outer lattice, rho12 over the fine lattice plus rho1T rho2T, kept when
// db_gap >= -1e-9, rates from conditional informations.
Family db_region_uc_oracle(const MacUcParams& p, const GridSpec& grid);
Family db_region_ic_oracle(const IcUcParams& p, const GridSpec& grid);

struct FastpathResult {
    double gap = 0.0;        // sup |fast - brute| over the shared R1 grid
    double tolerance = 0.0;  // two R1 grid steps
    bool ok() const { return gap <= tolerance; }
};

FastpathResult fastpath_equivalence(const MacNfParams& p, const GridSpec& fast,
                                    const GridSpec& brute, int points = 401);

struct SuiteResult {
    std::string name;
    std::string metric;
    int draws = 0;
    int passed = 0;
    int failed = 0;
    double worst = 0.0;
    double tolerance = 0.0;
    // JSON text of the first failing draw; empty if none.
    std::string failing_config;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    int n = 0;
    std::vector<SuiteResult> suites;

    bool all_passed() const;
    // Deterministic for a fixed (seed, n).
    std::string to_json() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

const std::vector<std::string>& suite_names();
// Throws DomainError for an unknown suite or n < 1.
SuiteResult run_suite(std::string_view name, std::uint64_t seed, int n);
VerifyReport run_verification(std::uint64_t seed, int n);

}  // namespace dbbound
