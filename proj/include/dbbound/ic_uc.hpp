#pragma once

#include <vector>

#include "dbbound/grid.hpp"
#include "dbbound/params.hpp"
#include "dbbound/regions.hpp"

namespace dbbound {

double beta_ic(const IcUcParams& p);
// i in 1..6; DomainError otherwise.
double f_ic(int i, double rho1T, double rho2T, const IcUcParams& p);

// Six-constraint polytope with rho12 = rho1T rho2T.
RatePolytope ic_db_polytope(double rho1T, double rho2T, const IcUcParams& p);
// Five-constraint cut-set polytope at input correlation rho.
RatePolytope ic_cutset_polytope(double rho, const IcUcParams& p);

Family db_region_ic(const IcUcParams& p, const GridSpec& grid);
Family cutset_region_ic(const IcUcParams& p, const GridSpec& grid);

// Independent inputs and no cooperation links.
RatePolytope ic_nocoop_polytope(const IcUcParams& p);

struct SumRatePoint {
    double h = 0.0;
    double db_sum = 0.0;
    double cs_sum = 0.0;
};

// Sets h12 = h21 = h for each value and reports both max sum rates.
// h_values must be nonnegative and ascending.
std::vector<SumRatePoint> sumrate_vs_h(const IcUcParams& tmpl, const std::vector<double>& h_values,
                                       const GridSpec& grid);

}  // namespace dbbound
