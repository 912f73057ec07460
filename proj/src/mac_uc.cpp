#include "dbbound/mac_uc.hpp"

#include <algorithm>
#include <cmath>

#include "dbbound/units.hpp"

namespace dbbound {

namespace {

// h / s with h / inf = 0.
double ratio(double h, double s) { return std::isinf(s) ? 0.0 : h / s; }

constexpr std::size_t kChunk = 256;

}  // namespace

double beta_uc(const MacUcParams& p) {
    p.validate();
    const double a = ratio(p.h12, p.sigma_z2_2);
    const double b = ratio(p.h21, p.sigma_z1_2);
    return a * b + p.h20 / p.sigma_z2 * a + p.h10 / p.sigma_z2 * b;
}

double f1_uc(double rho1T, const MacUcParams& p) {
    return (1.0 - rho1T * rho1T) * p.p1 * (p.h10 / p.sigma_z2 + ratio(p.h12, p.sigma_z2_2));
}

double f2_uc(double rho2T, const MacUcParams& p) {
    return (1.0 - rho2T * rho2T) * p.p2 * (p.h20 / p.sigma_z2 + ratio(p.h21, p.sigma_z1_2));
}

double f3_uc(double rho1T, double rho2T, const MacUcParams& p) {
    return f1_uc(rho1T, p) + f2_uc(rho2T, p) +
           (1.0 - rho1T * rho1T) * (1.0 - rho2T * rho2T) * p.p1 * p.p2 * beta_uc(p);
}

double f4_uc(double rho1T, double rho2T, const MacUcParams& p) {
    return (p.h10 * p.p1 + p.h20 * p.p2 +
            2.0 * rho1T * rho2T * std::sqrt(p.h10 * p.h20 * p.p1 * p.p2)) /
           p.sigma_z2;
}

RatePolytope uc_db_polytope(double rho1T, double rho2T, const MacUcParams& p) {
    RatePolytope out;
    out.add_r1(half_log1p(f1_uc(rho1T, p)))
        .add_r2(half_log1p(f2_uc(rho2T, p)))
        .add_sum(half_log1p(f3_uc(rho1T, rho2T, p)))
        .add_sum(half_log1p(f4_uc(rho1T, rho2T, p)));
    return out;
}

RatePolytope uc_cutset_polytope(double rho, const MacUcParams& p) {
    const double keep = 1.0 - rho * rho;
    const double s = (p.h10 * p.p1 + p.h20 * p.p2 + 2.0 * rho * std::sqrt(p.h10 * p.h20 * p.p1 * p.p2)) /
                     p.sigma_z2;
    return RatePolytope::pentagon(
        half_log1p(keep * p.p1 * (p.h10 / p.sigma_z2 + ratio(p.h12, p.sigma_z2_2))),
        half_log1p(keep * p.p2 * (p.h20 / p.sigma_z2 + ratio(p.h21, p.sigma_z1_2))),
        half_log1p(s));
}

Family db_region_uc(const MacUcParams& p, const GridSpec& grid) {
    p.validate();
    grid.validate();
    const std::vector<double> axis = rho_lattice(grid.step, grid.range);
    return Family("mac-uc db", axis.size(), [p, axis](std::size_t block, const Family::Emit& emit) {
        for (double r2T : axis) emit(uc_db_polytope(axis[block], r2T, p));
    });
}

Family cutset_region_uc(const MacUcParams& p, const GridSpec& grid) {
    p.validate();
    grid.validate();
    const std::vector<double> rhos = cutset_lattice(grid);
    return Family("mac-uc cutset", (rhos.size() + kChunk - 1) / kChunk,
                  [p, rhos](std::size_t block, const Family::Emit& emit) {
                      const std::size_t end = std::min(rhos.size(), (block + 1) * kChunk);
                      for (std::size_t i = block * kChunk; i < end; ++i) {
                          emit(uc_cutset_polytope(rhos[i], p));
                      }
                  });
}

RatePolytope nocoop_capacity(const MacUcParams& p) {
    p.validate();
    const double s1 = p.h10 * p.p1 / p.sigma_z2;
    const double s2 = p.h20 * p.p2 / p.sigma_z2;
    return RatePolytope::pentagon(half_log1p(s1), half_log1p(s2), half_log1p(s1 + s2));
}

double total_coop_line(const MacUcParams& p) {
    p.validate();
    const double amp = std::sqrt(p.h10 * p.p1) + std::sqrt(p.h20 * p.p2);
    return half_log1p(amp * amp / p.sigma_z2);
}

}  // namespace dbbound
