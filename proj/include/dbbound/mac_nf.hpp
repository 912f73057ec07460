#pragma once

#include "dbbound/covariance.hpp"
#include "dbbound/grid.hpp"
#include "dbbound/params.hpp"
#include "dbbound/regions.hpp"

namespace dbbound {

// sigma_z2 + s1 s2 / (s1 + s2) for feedback variances s1, s2. Either one
// zero gives sigma_z2; one infinite gives sigma_z2 + the other; both
// infinite gives +inf.
double eta_eff(const MacNfParams& p);

// s1 s2 + sigma_z2 (s1 + s2).
double eta_product(const MacNfParams& p);

// Powers, receiver noise and the denominator of the dependence-balance
// constraint. Shared by the distinct- and common-feedback variants.
struct NfCore {
    double p1 = 1.0;
    double p2 = 1.0;
    double sigma_z2 = 1.0;
    double eta = 1.0;
};

NfCore nf_core(const MacNfParams& p);
// eta = sigma_z2 + sigma_v2.
NfCore nf_core(const MacNfCommonParams& p);

// Conditional variances of the Gaussian inputs (power units).
double f1_nf(const CorrelationTriple& rho, double p1, double p2);
double f2_nf(const CorrelationTriple& rho, double p1, double p2);
double f3_nf(const CorrelationTriple& rho, double p1, double p2);
inline double f1_nf(const CorrelationTriple& rho, const MacNfParams& p) { return f1_nf(rho, p.p1, p.p2); }
inline double f2_nf(const CorrelationTriple& rho, const MacNfParams& p) { return f2_nf(rho, p.p1, p.p2); }
inline double f3_nf(const CorrelationTriple& rho, const MacNfParams& p) { return f3_nf(rho, p.p1, p.p2); }

// f3 <= f1 + f2 + f1 f2 / eta + 1e-12.
bool db_feasible_nf(const CorrelationTriple& rho, const NfCore& core);
inline bool db_feasible_nf(const CorrelationTriple& rho, const MacNfParams& p) {
    return db_feasible_nf(rho, nf_core(p));
}

// I(X1;X2|Y_F1,Y_F2,T) - I(X1;X2|T) for Gaussian inputs, in the active
// unit. Nonnegative exactly when db_feasible_nf holds.
double db_gap_nf_closed(const CorrelationTriple& rho, const MacNfParams& p);

// f1 + f2 + f1 f2 / eta - f3 at rho12 = rho1T rho2T + alpha.
// DomainError unless 0 <= alpha <= lambda_bound(rho1T, rho2T).
double g_alpha(double alpha, double rho1T, double rho2T, const NfCore& core);
double dg_dalpha(double alpha, double rho1T, double rho2T, const NfCore& core);
inline double g_alpha(double alpha, double rho1T, double rho2T, const MacNfParams& p) {
    return g_alpha(alpha, rho1T, rho2T, nf_core(p));
}
inline double dg_dalpha(double alpha, double rho1T, double rho2T, const MacNfParams& p) {
    return dg_dalpha(alpha, rho1T, rho2T, nf_core(p));
}

// Largest alpha in [0, lambda] with g(alpha) >= 0, by bisection to 1e-12.
// Returns 0 when lambda <= 1e-9.
double alpha_star(double rho1T, double rho2T, const NfCore& core);
inline double alpha_star(double rho1T, double rho2T, const MacNfParams& p) {
    return alpha_star(rho1T, rho2T, nf_core(p));
}

// Pentagon of the three rate bounds at rho.
RatePolytope nf_polytope(const CorrelationTriple& rho, const NfCore& core);

enum class NfSweep {
    // rho1T, rho2T on the outer lattice; rho12 over [rho1T rho2T, + alpha*].
    fast,
    // Full symmetric lattice in all three correlations, filtered by
    // db_feasible_nf.
    brute_force,
};

Family db_region_nf(const MacNfParams& p, const GridSpec& grid, NfSweep sweep = NfSweep::fast);
Family db_region_nf_common(const MacNfCommonParams& p, const GridSpec& grid,
                           NfSweep sweep = NfSweep::fast);

// Pentagons over rho in cutset_lattice(grid), the Ozarow correlation and,
// for each of the grid.r1_points default frontier samples, the exact
// maximizing rho. Independent of the feedback variances.
Family cutset_region_nf(const MacNfParams& p, const GridSpec& grid);

RatePolytope nofeedback_capacity(const MacNfParams& p);

// Largest rho with (1 + S(rho)/sz) <= (1 + (1-rho^2) P1/sz)(1 + (1-rho^2) P2/sz).
double ozarow_rho_star(const MacNfParams& p);

// Cut-set pentagons restricted to rho <= ozarow_rho_star, including it and
// the clipped per-sample optima.
Family ozarow_reference(const MacNfParams& p, const GridSpec& grid);

}  // namespace dbbound
