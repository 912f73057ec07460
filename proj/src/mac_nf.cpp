#include "dbbound/mac_nf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbbound/errors.hpp"
#include "dbbound/units.hpp"

namespace dbbound {

double eta_eff(const MacNfParams& p) {
    const double s1 = p.sigma_z1_2;
    const double s2 = p.sigma_z2_2;
    if (s1 == 0.0 || s2 == 0.0) return p.sigma_z2;
    if (std::isinf(s1) && std::isinf(s2)) return kInfiniteVariance;
    if (std::isinf(s1)) return p.sigma_z2 + s2;
    if (std::isinf(s2)) return p.sigma_z2 + s1;
    return p.sigma_z2 + s1 * s2 / (s1 + s2);
}

double eta_product(const MacNfParams& p) {
    const double s1 = p.sigma_z1_2;
    const double s2 = p.sigma_z2_2;
    return s1 * s2 + p.sigma_z2 * (s1 + s2);
}

NfCore nf_core(const MacNfParams& p) {
    p.validate();
    return NfCore{p.p1, p.p2, p.sigma_z2, eta_eff(p)};
}

NfCore nf_core(const MacNfCommonParams& p) {
    p.validate();
    return NfCore{p.p1, p.p2, p.sigma_z2, p.sigma_z2 + p.sigma_v2};
}

namespace {

// P * Delta / (1 - rho_other^2), written as P((1 - rho_own^2) - d^2/(1 - rho_other^2)).
double conditional_power(double power, double rho_own, double rho_other, double d) {
    const double own = 1.0 - rho_own * rho_own;
    const double other = 1.0 - rho_other * rho_other;
    if (other <= 1e-12) return power * std::max(0.0, own);
    return power * std::max(0.0, own - d * d / other);
}

double cross_term(double f1, double f2, double eta) {
    return std::isinf(eta) ? 0.0 : f1 * f2 / eta;
}

}  // namespace

double f1_nf(const CorrelationTriple& rho, double p1, double /*p2*/) {
    return conditional_power(p1, rho.rho1T, rho.rho2T, rho.rho12 - rho.rho1T * rho.rho2T);
}

double f2_nf(const CorrelationTriple& rho, double /*p1*/, double p2) {
    return conditional_power(p2, rho.rho2T, rho.rho1T, rho.rho12 - rho.rho1T * rho.rho2T);
}

double f3_nf(const CorrelationTriple& rho, double p1, double p2) {
    const double d = rho.rho12 - rho.rho1T * rho.rho2T;
    const double v = (1.0 - rho.rho1T * rho.rho1T) * p1 + (1.0 - rho.rho2T * rho.rho2T) * p2 +
                     2.0 * d * std::sqrt(p1 * p2);
    return std::max(0.0, v);
}

bool db_feasible_nf(const CorrelationTriple& rho, const NfCore& core) {
    require_valid(rho);
    const double f1 = f1_nf(rho, core.p1, core.p2);
    const double f2 = f2_nf(rho, core.p1, core.p2);
    const double f3 = f3_nf(rho, core.p1, core.p2);
    return f3 <= f1 + f2 + cross_term(f1, f2, core.eta) + 1e-12;
}

double db_gap_nf_closed(const CorrelationTriple& rho, const MacNfParams& p) {
    require_valid(rho);
    const double eta = nf_core(p).eta;
    if (std::isinf(eta)) return 0.0;
    const double f1 = f1_nf(rho, p);
    const double f2 = f2_nf(rho, p);
    const double f3 = f3_nf(rho, p);
    return from_nats(0.5 * std::log1p((f1 + f2 - f3 + f1 * f2 / eta) / (eta + f3)));
}

namespace {

double checked_alpha(double alpha, double lambda) {
    if (!(alpha >= -1e-12 && alpha <= lambda + 1e-12)) {
        throw DomainError("alpha must lie in [0, lambda]");
    }
    return std::clamp(alpha, 0.0, lambda);
}

double g_unchecked(double alpha, double rho1T, double rho2T, const NfCore& core) {
    const CorrelationTriple rho{rho1T * rho2T + alpha, rho1T, rho2T};
    const double f1 = f1_nf(rho, core.p1, core.p2);
    const double f2 = f2_nf(rho, core.p1, core.p2);
    const double f3 = f3_nf(rho, core.p1, core.p2);
    return f1 + f2 + cross_term(f1, f2, core.eta) - f3;
}

}  // namespace

double g_alpha(double alpha, double rho1T, double rho2T, const NfCore& core) {
    const double lambda = lambda_bound(rho1T, rho2T);
    return g_unchecked(checked_alpha(alpha, lambda), rho1T, rho2T, core);
}

double dg_dalpha(double alpha, double rho1T, double rho2T, const NfCore& core) {
    const double lambda = lambda_bound(rho1T, rho2T);
    const double a = checked_alpha(alpha, lambda);
    const double root = 2.0 * std::sqrt(core.p1 * core.p2);
    if (a == 0.0) return -root;
    const double u1 = 1.0 - rho1T * rho1T;
    const double u2 = 1.0 - rho2T * rho2T;
    double out = -2.0 * a * (core.p1 / u2 + core.p2 / u1) - root;
    if (!std::isinf(core.eta)) {
        const double ratio = a / lambda;
        out -= 4.0 * a * core.p1 * core.p2 * (1.0 - ratio * ratio) / core.eta;
    }
    return out;
}

double alpha_star(double rho1T, double rho2T, const NfCore& core) {
    const double lambda = lambda_bound(rho1T, rho2T);
    if (lambda <= 1e-9) return 0.0;
    if (g_unchecked(lambda, rho1T, rho2T, core) >= 0.0) return lambda;
    double lo = 0.0;
    double hi = lambda;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (g_unchecked(mid, rho1T, rho2T, core) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

RatePolytope nf_polytope(const CorrelationTriple& rho, const NfCore& core) {
    const double f1 = f1_nf(rho, core.p1, core.p2);
    const double f2 = f2_nf(rho, core.p1, core.p2);
    const double f3 = f3_nf(rho, core.p1, core.p2);
    return RatePolytope::pentagon(half_log1p(f1 / core.sigma_z2), half_log1p(f2 / core.sigma_z2),
                                  half_log1p(f3 / core.sigma_z2));
}

namespace {

Family nf_db_family(const NfCore& core, const GridSpec& grid, NfSweep sweep, std::string what) {
    grid.validate();
    const long n_fine = std::max(1L, std::lround(1.0 / grid.fine_step));
    const double fine = static_cast<double>(n_fine);
    if (sweep == NfSweep::fast) {
        const std::vector<double> axis = rho_lattice(grid.step, grid.range);
        return Family(what + " (fast)", axis.size(),
                      [core, axis, n_fine, fine](std::size_t block, const Family::Emit& emit) {
                          const double r1T = axis[block];
                          for (double r2T : axis) {
                              const double r0 = r1T * r2T;
                              const double a = alpha_star(r1T, r2T, core);
                              emit(nf_polytope({r0, r1T, r2T}, core));
                              if (a <= 0.0) continue;
                              const double top = r0 + a;
                              for (long j = static_cast<long>(std::floor(r0 * fine)) + 1;
                                   j <= n_fine && static_cast<double>(j) / fine < top; ++j) {
                                  const double r12 = static_cast<double>(j) / fine;
                                  if (r12 <= r0) continue;
                                  emit(nf_polytope({r12, r1T, r2T}, core));
                              }
                              emit(nf_polytope({top, r1T, r2T}, core));
                          }
                      });
    }
    const std::vector<double> axis = rho_lattice(grid.step, RhoRange::symmetric);
    const std::vector<double> inner = rho_lattice(grid.fine_step, RhoRange::symmetric);
    return Family(what + " (brute force)", axis.size(),
                  [core, axis, inner](std::size_t block, const Family::Emit& emit) {
                      const double r1T = axis[block];
                      for (double r2T : axis) {
                          for (double r12 : inner) {
                              const CorrelationTriple rho{r12, r1T, r2T};
                              if (delta(rho) < -kDeltaTolerance) continue;
                              if (!db_feasible_nf(rho, core)) continue;
                              emit(nf_polytope(rho, core));
                          }
                      }
                  });
}

constexpr std::size_t kChunk = 256;

Family rho_list_family(std::string what, std::vector<double> rhos, NfCore core) {
    const std::size_t blocks = (rhos.size() + kChunk - 1) / kChunk;
    return Family(std::move(what), blocks,
                  [core, rhos = std::move(rhos)](std::size_t block, const Family::Emit& emit) {
                      const std::size_t end = std::min(rhos.size(), (block + 1) * kChunk);
                      for (std::size_t i = block * kChunk; i < end; ++i) {
                          emit(nf_polytope({rhos[i], 0.0, 0.0}, core));
                      }
                  });
}

}  // namespace

Family db_region_nf(const MacNfParams& p, const GridSpec& grid, NfSweep sweep) {
    return nf_db_family(nf_core(p), grid, sweep, "mac-nf db");
}

Family db_region_nf_common(const MacNfCommonParams& p, const GridSpec& grid, NfSweep sweep) {
    return nf_db_family(nf_core(p), grid, sweep, "mac-nf-common db");
}

double ozarow_rho_star(const MacNfParams& p) {
    NfCore core = nf_core(p);
    core.eta = p.sigma_z2;
    return alpha_star(0.0, 0.0, core);
}

namespace {

// Largest x in [lo, hi] with pred(x), for pred true at lo and monotone.
template <class Pred>
double bisect_last(double lo, double hi, Pred pred) {
    if (pred(hi)) return hi;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? lo : hi) = mid;
    }
    return lo;
}

// For each R1 sample on the default frontier grid, the input correlation that
// maximizes R2 over the cut-set pentagons. R2 cap falls and the sum bound rises
// with rho, so the optimum is their crossing unless R1 itself is infeasible there.
std::vector<double> cutset_optimal_rhos(const NfCore& core, int points) {
    const auto caps = [&core](double rho) { return nf_polytope({rho, 0.0, 0.0}, core); };
    const RatePolytope at_zero = caps(0.0);
    std::vector<double> out;
    for (double r1 : linear_grid(at_zero.r1_cap(), points)) {
        const double feasible = bisect_last(0.0, kRhoCap, [&](double rho) { return caps(rho).r1_cap() >= r1; });
        const double crossing = bisect_last(0.0, kRhoCap, [&](double rho) {
            const RatePolytope q = caps(rho);
            return q.r2_cap() >= q.sum_cap() - r1;
        });
        out.push_back(std::min(feasible, crossing));
    }
    return out;
}

std::vector<double> merge_rhos(std::vector<double> rhos) {
    std::sort(rhos.begin(), rhos.end());
    rhos.erase(std::unique(rhos.begin(), rhos.end()), rhos.end());
    return rhos;
}

}  // namespace

Family cutset_region_nf(const MacNfParams& p, const GridSpec& grid) {
    grid.validate();
    const NfCore core = nf_core(p);
    // The lattice alone undershoots the continuous union between lattice points;
    // the per-sample optima make the frontier exact on the default R1 grid.
    std::vector<double> rhos = cutset_lattice(grid);
    const std::vector<double> best = cutset_optimal_rhos(core, grid.r1_points);
    rhos.insert(rhos.end(), best.begin(), best.end());
    rhos.push_back(ozarow_rho_star(p));
    return rho_list_family("mac-nf cutset", merge_rhos(std::move(rhos)), core);
}

RatePolytope nofeedback_capacity(const MacNfParams& p) {
    p.validate();
    return RatePolytope::pentagon(half_log1p(p.p1 / p.sigma_z2), half_log1p(p.p2 / p.sigma_z2),
                                  half_log1p((p.p1 + p.p2) / p.sigma_z2));
}

Family ozarow_reference(const MacNfParams& p, const GridSpec& grid) {
    grid.validate();
    const double star = ozarow_rho_star(p);
    const NfCore core = nf_core(p);
    std::vector<double> rhos;
    for (double r : cutset_lattice(grid)) {
        if (r < star) rhos.push_back(r);
    }
    for (double r : cutset_optimal_rhos(core, grid.r1_points)) rhos.push_back(std::min(r, star));
    rhos.push_back(star);
    return rho_list_family("mac-nf ozarow", merge_rhos(std::move(rhos)), core);
}

}  // namespace dbbound
