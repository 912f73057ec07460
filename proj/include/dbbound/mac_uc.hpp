#pragma once

#include "dbbound/grid.hpp"
#include "dbbound/params.hpp"
#include "dbbound/regions.hpp"

namespace dbbound {

// SNR-type terms of the cooperation MAC bound (dimensionless). Infinite
// cooperation variances make the matching terms vanish.
double beta_uc(const MacUcParams& p);
double f1_uc(double rho1T, const MacUcParams& p);
double f2_uc(double rho2T, const MacUcParams& p);
double f3_uc(double rho1T, double rho2T, const MacUcParams& p);
double f4_uc(double rho1T, double rho2T, const MacUcParams& p);

// {R1 <= C(f1), R2 <= C(f2), sum <= C(f3), sum <= C(f4)}, C(x) = 1/2 log(1+x).
RatePolytope uc_db_polytope(double rho1T, double rho2T, const MacUcParams& p);
// Cut-set pentagon at input correlation rho.
RatePolytope uc_cutset_polytope(double rho, const MacUcParams& p);

// Union over the outer (rho1T, rho2T) lattice with rho12 = rho1T rho2T.
Family db_region_uc(const MacUcParams& p, const GridSpec& grid);
// Union over cutset_lattice(grid).
Family cutset_region_uc(const MacUcParams& p, const GridSpec& grid);

// Direct links only, independent inputs.
RatePolytope nocoop_capacity(const MacUcParams& p);
// 1/2 log(1 + (sqrt(h10 P1) + sqrt(h20 P2))^2 / sz).
double total_coop_line(const MacUcParams& p);

}  // namespace dbbound
