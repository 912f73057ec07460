#include "dbbound/ic_uc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbbound/errors.hpp"
#include "dbbound/units.hpp"

namespace dbbound {

namespace {

double ratio(double h, double s) { return std::isinf(s) ? 0.0 : h / s; }

double mismatch(const IcUcParams& p) {
    const double m = 1.0 - std::sqrt(p.a * p.b);
    return m * m / (p.sigma_n1_2 * p.sigma_n2_2);
}

// Received SNR at the two destinations with input correlation r.
double k1(double r, const IcUcParams& p) {
    return (p.p1 + p.b * p.p2 + 2.0 * r * std::sqrt(p.b * p.p1 * p.p2)) / p.sigma_n1_2;
}

double k2(double r, const IcUcParams& p) {
    return (p.a * p.p1 + p.p2 + 2.0 * r * std::sqrt(p.a * p.p1 * p.p2)) / p.sigma_n2_2;
}

double gain1(const IcUcParams& p) {
    return 1.0 / p.sigma_n1_2 + p.a / p.sigma_n2_2 + ratio(p.h12, p.sigma_z2_2);
}

double gain2(const IcUcParams& p) {
    return p.b / p.sigma_n1_2 + 1.0 / p.sigma_n2_2 + ratio(p.h21, p.sigma_z1_2);
}

constexpr std::size_t kChunk = 256;

}  // namespace

double beta_ic(const IcUcParams& p) {
    p.validate();
    const double c12 = ratio(p.h12, p.sigma_z2_2);
    const double c21 = ratio(p.h21, p.sigma_z1_2);
    return c12 * c21 + mismatch(p) + c12 * (1.0 / p.sigma_n2_2 + p.b / p.sigma_n1_2) +
           c21 * (1.0 / p.sigma_n1_2 + p.a / p.sigma_n2_2);
}

double f_ic(int i, double rho1T, double rho2T, const IcUcParams& p) {
    const double r0 = rho1T * rho2T;
    const double u1 = 1.0 - rho1T * rho1T;
    const double u2 = 1.0 - rho2T * rho2T;
    switch (i) {
        case 1:
            return k1(r0, p);
        case 2:
            return k2(r0, p);
        case 3:
            return u1 * p.p1 * gain1(p);
        case 4:
            return u2 * p.p2 * gain2(p);
        case 5:
            return k1(r0, p) + k2(r0, p) + (1.0 - r0 * r0) * p.p1 * p.p2 * mismatch(p);
        case 6:
            return u1 * p.p1 * gain1(p) + u2 * p.p2 * gain2(p) + u1 * u2 * p.p1 * p.p2 * beta_ic(p);
        default:
            throw DomainError("f index must be in 1..6, got " + std::to_string(i));
    }
}

RatePolytope ic_db_polytope(double rho1T, double rho2T, const IcUcParams& p) {
    RatePolytope out;
    out.add_r1(half_log1p(f_ic(1, rho1T, rho2T, p)))
        .add_r2(half_log1p(f_ic(2, rho1T, rho2T, p)))
        .add_r1(half_log1p(f_ic(3, rho1T, rho2T, p)))
        .add_r2(half_log1p(f_ic(4, rho1T, rho2T, p)))
        .add_sum(half_log1p(f_ic(5, rho1T, rho2T, p)))
        .add_sum(half_log1p(f_ic(6, rho1T, rho2T, p)));
    return out;
}

RatePolytope ic_cutset_polytope(double rho, const IcUcParams& p) {
    const double keep = 1.0 - rho * rho;
    RatePolytope out;
    out.add_r1(half_log1p(k1(rho, p)))
        .add_r2(half_log1p(k2(rho, p)))
        .add_r1(half_log1p(keep * p.p1 * gain1(p)))
        .add_r2(half_log1p(keep * p.p2 * gain2(p)))
        .add_sum(half_log1p(k1(rho, p) + k2(rho, p) + keep * p.p1 * p.p2 * mismatch(p)));
    return out;
}

Family db_region_ic(const IcUcParams& p, const GridSpec& grid) {
    p.validate();
    grid.validate();
    const std::vector<double> axis = rho_lattice(grid.step, grid.range);
    return Family("ic-uc db", axis.size(), [p, axis](std::size_t block, const Family::Emit& emit) {
        for (double r2T : axis) emit(ic_db_polytope(axis[block], r2T, p));
    });
}

Family cutset_region_ic(const IcUcParams& p, const GridSpec& grid) {
    p.validate();
    grid.validate();
    const std::vector<double> rhos = cutset_lattice(grid);
    return Family("ic-uc cutset", (rhos.size() + kChunk - 1) / kChunk,
                  [p, rhos](std::size_t block, const Family::Emit& emit) {
                      const std::size_t end = std::min(rhos.size(), (block + 1) * kChunk);
                      for (std::size_t i = block * kChunk; i < end; ++i) {
                          emit(ic_cutset_polytope(rhos[i], p));
                      }
                  });
}

RatePolytope ic_nocoop_polytope(const IcUcParams& p) {
    p.validate();
    const double s11 = p.p1 / p.sigma_n1_2;
    const double s22 = p.p2 / p.sigma_n2_2;
    const double s12 = p.b * p.p2 / p.sigma_n1_2;
    const double s21 = p.a * p.p1 / p.sigma_n2_2;
    RatePolytope out;
    out.add_r1(half_log1p(s11 + s12))
        .add_r2(half_log1p(s21 + s22))
        .add_r1(half_log1p(s11 + s21))
        .add_r2(half_log1p(s12 + s22))
        .add_sum(half_log1p(s11 + s12 + s21 + s22 + p.p1 * p.p2 * mismatch(p)));
    return out;
}

std::vector<SumRatePoint> sumrate_vs_h(const IcUcParams& tmpl, const std::vector<double>& h_values,
                                       const GridSpec& grid) {
    for (std::size_t i = 0; i < h_values.size(); ++i) {
        if (!(h_values[i] >= 0.0) || (i > 0 && h_values[i] < h_values[i - 1])) {
            throw DomainError("h values must be nonnegative and ascending");
        }
    }
    std::vector<SumRatePoint> out;
    out.reserve(h_values.size());
    for (double h : h_values) {
        IcUcParams p = tmpl;
        p.h12 = h;
        p.h21 = h;
        out.push_back({h, max_sum_rate(db_region_ic(p, grid)), max_sum_rate(cutset_region_ic(p, grid))});
    }
    return out;
}

}  // namespace dbbound
