#pragma once

#include <vector>

#include "dbbound/params.hpp"

namespace dbbound {

// unit: correlations in [0, 1]; symmetric: [-1, 1].
enum class RhoRange { unit, symmetric };

const char* to_string(RhoRange range);

struct GridSpec {
    // Spacing of the outer (rho1T, rho2T) lattice.
    double step = 0.05;
    // Spacing of the inner rho12 sweep and of the cut-set rho lattice.
    double fine_step = 1e-3;
    RhoRange range = RhoRange::unit;
    // Number of R1 samples on each frontier.
    int r1_points = 401;

    // Throws DomainError unless step in (0, 0.2], fine_step in (0, step]
    // and r1_points >= 2.
    void validate() const;
};

// Largest |rho| used by any sweep.
inline constexpr double kRhoCap = 1.0 - 1e-6;

GridSpec default_grid(ModelKind kind);

// Points k/n, n = round(1/step), over the chosen range; +-1 are replaced
// by +-kRhoCap. Ascending.
std::vector<double> rho_lattice(double step, RhoRange range);

// rho_lattice(fine_step, unit) merged with the outer axis and every
// pairwise product of outer-axis values; sorted, deduplicated.
std::vector<double> cutset_lattice(const GridSpec& grid);

// `n` evenly spaced points on [0, hi]; the last equals hi exactly.
std::vector<double> linear_grid(double hi, int n);

}  // namespace dbbound
