#include "dbbound/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbbound/errors.hpp"

namespace dbbound {

const char* to_string(RhoRange range) {
    return range == RhoRange::unit ? "unit" : "symmetric";
}

void GridSpec::validate() const {
    if (!(step > 0.0 && step <= 0.2)) {
        throw DomainError("grid must lie in (0, 0.2], got " + std::to_string(step));
    }
    if (!(fine_step > 0.0 && fine_step <= step)) {
        throw DomainError("fine-step must lie in (0, grid], got " + std::to_string(fine_step));
    }
    if (r1_points < 2) {
        throw DomainError("r1-points must be at least 2");
    }
}

GridSpec default_grid(ModelKind kind) {
    GridSpec g;
    if (kind == ModelKind::mac_nf) {
        g.step = 0.05;
    } else {
        g.step = 0.005;
    }
    g.fine_step = 1e-3;
    return g;
}

std::vector<double> rho_lattice(double step, RhoRange range) {
    const long n = std::max(1L, std::lround(1.0 / step));
    const long lo = range == RhoRange::unit ? 0 : -n;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n - lo + 1));
    for (long k = lo; k <= n; ++k) {
        double v = static_cast<double>(k) / static_cast<double>(n);
        if (k == n) v = kRhoCap;
        if (k == -n) v = -kRhoCap;
        out.push_back(v);
    }
    return out;
}

std::vector<double> cutset_lattice(const GridSpec& grid) {
    std::vector<double> out = rho_lattice(grid.fine_step, RhoRange::unit);
    const std::vector<double> axis = rho_lattice(grid.step, RhoRange::unit);
    out.insert(out.end(), axis.begin(), axis.end());
    for (std::size_t i = 0; i < axis.size(); ++i) {
        for (std::size_t j = i; j < axis.size(); ++j) out.push_back(axis[i] * axis[j]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> linear_grid(double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = hi * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    out.back() = hi;
    return out;
}

}  // namespace dbbound
