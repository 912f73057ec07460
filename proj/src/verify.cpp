#include "dbbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <nlohmann/json.hpp>
#include <numbers>

#include "dbbound/errors.hpp"
#include "dbbound/ic_uc.hpp"
#include "dbbound/mac_nf.hpp"
#include "dbbound/mac_uc.hpp"
#include "dbbound/random_config.hpp"

namespace dbbound {

using json = nlohmann::json;

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

}  // namespace

double EpiCheckInput::kappa() const { return (sigma_z1_2 + sigma_z2_2) / (sigma_z1_2 * sigma_z2_2); }

double EpiCheckInput::mu() const { return sigma_z2_2 / (sigma_z1_2 + sigma_z2_2); }

double epi_rhs(const EpiCheckInput& in) {
    const double s1 = in.sigma_z1_2;
    const double s2 = in.sigma_z2_2;
    return 0.5 * std::log(kTwoPiE * kTwoPiE * s1 * s2 +
                          kTwoPiE * (s1 + s2) * std::exp(2.0 * in.h_y_given_t));
}

double epi_rhs_kappa(const EpiCheckInput& in) {
    const double combined = 0.5 * std::log(std::exp(2.0 * in.h_y_given_t) + kTwoPiE / in.kappa());
    const double difference = 0.5 * std::log(kTwoPiE * (in.sigma_z1_2 + in.sigma_z2_2));
    return combined + difference;
}

EpiResult epi_lower_bound_check(const MacNfParams& p, const CorrelationTriple& rho) {
    const JointGaussianSystem sys = build_joint_system(p, rho);
    EpiCheckInput in;
    in.h_y_given_t = gaussian_entropy_nats(sys, {Var::Y}, {Var::T});
    in.sigma_z1_2 = p.sigma_z1_2;
    in.sigma_z2_2 = p.sigma_z2_2;
    EpiResult out;
    out.lhs = gaussian_entropy_nats(sys, {Var::YF1, Var::YF2}, {Var::T});
    out.rhs = epi_rhs(in);
    out.rhs_kappa = epi_rhs_kappa(in);
    out.ok = out.lhs >= out.rhs - 1e-12;
    return out;
}

double db_gap(const ChannelParams& params, const CorrelationTriple& rho) {
    const JointGaussianSystem sys = build_joint_system(params, rho);
    return gaussian_cmi(sys, {Var::X1}, {Var::YF1, Var::YF2}, {Var::X2, Var::T}) -
           gaussian_cmi(sys, {Var::X1}, {Var::YF1, Var::YF2}, {Var::T});
}

double db_gap_direct(const ChannelParams& params, const CorrelationTriple& rho) {
    const JointGaussianSystem sys = build_joint_system(params, rho);
    return gaussian_cmi(sys, {Var::X1}, {Var::X2}, {Var::YF1, Var::YF2, Var::T}) -
           gaussian_cmi(sys, {Var::X1}, {Var::X2}, {Var::T});
}

RatePolytope nf_oracle_polytope(const CorrelationTriple& rho, const MacNfParams& p) {
    const JointGaussianSystem sys = build_joint_system(p, rho);
    return RatePolytope::pentagon(gaussian_cmi(sys, {Var::X1}, {Var::Y}, {Var::X2, Var::T}),
                                  gaussian_cmi(sys, {Var::X2}, {Var::Y}, {Var::X1, Var::T}),
                                  gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y}, {Var::T}));
}

RatePolytope uc_oracle_polytope(const CorrelationTriple& rho, const MacUcParams& p) {
    const JointGaussianSystem sys = build_joint_system(p, rho);
    RatePolytope out;
    out.add_r1(gaussian_cmi(sys, {Var::X1}, {Var::Y, Var::YF2}, {Var::X2, Var::T}))
        .add_r2(gaussian_cmi(sys, {Var::X2}, {Var::Y, Var::YF1}, {Var::X1, Var::T}))
        .add_sum(gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y, Var::YF1, Var::YF2}, {Var::T}))
        .add_sum(gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y}));
    return out;
}

RatePolytope ic_oracle_polytope(const CorrelationTriple& rho, const IcUcParams& p) {
    const JointGaussianSystem sys = build_joint_system(p, rho);
    RatePolytope out;
    out.add_r1(gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y1}))
        .add_r2(gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y2}))
        .add_r1(gaussian_cmi(sys, {Var::X1}, {Var::Y1, Var::Y2, Var::YF2}, {Var::X2, Var::T}))
        .add_r2(gaussian_cmi(sys, {Var::X2}, {Var::Y1, Var::Y2, Var::YF1}, {Var::X1, Var::T}))
        .add_sum(gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y1, Var::Y2}))
        .add_sum(gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y1, Var::Y2, Var::YF1, Var::YF2},
                              {Var::T}));
    return out;
}

RatePolytope nf_cutset_oracle_polytope(double rho, const MacNfParams& p) {
    const JointGaussianSystem sys = build_joint_system(p, {rho, 0.0, 0.0});
    return RatePolytope::pentagon(gaussian_cmi(sys, {Var::X1}, {Var::Y}, {Var::X2}),
                                  gaussian_cmi(sys, {Var::X2}, {Var::Y}, {Var::X1}),
                                  gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y}));
}

RatePolytope uc_cutset_oracle_polytope(double rho, const MacUcParams& p) {
    const JointGaussianSystem sys = build_joint_system(p, {rho, 0.0, 0.0});
    return RatePolytope::pentagon(gaussian_cmi(sys, {Var::X1}, {Var::Y, Var::YF2}, {Var::X2}),
                                  gaussian_cmi(sys, {Var::X2}, {Var::Y, Var::YF1}, {Var::X1}),
                                  gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y}));
}

RatePolytope ic_cutset_oracle_polytope(double rho, const IcUcParams& p) {
    const JointGaussianSystem sys = build_joint_system(p, {rho, 0.0, 0.0});
    RatePolytope out;
    out.add_r1(gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y1}))
        .add_r2(gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y2}))
        .add_r1(gaussian_cmi(sys, {Var::X1}, {Var::Y1, Var::Y2, Var::YF2}, {Var::X2}))
        .add_r2(gaussian_cmi(sys, {Var::X2}, {Var::Y1, Var::Y2, Var::YF1}, {Var::X1}))
        .add_sum(gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::Y1, Var::Y2}));
    return out;
}

namespace {

template <typename P, typename Poly>
Family oracle_family(std::string what, const P& p, const GridSpec& grid, Poly polytope) {
    grid.validate();
    const std::vector<double> axis = rho_lattice(grid.step, RhoRange::unit);
    const std::vector<double> inner = rho_lattice(grid.fine_step, RhoRange::symmetric);
    return Family(std::move(what), axis.size(),
                  [p, axis, inner, polytope](std::size_t block, const Family::Emit& emit) {
                      const double r1T = axis[block];
                      for (double r2T : axis) {
                          const double r0 = r1T * r2T;
                          const double lambda = lambda_bound(r1T, r2T);
                          std::vector<double> candidates{r0};
                          for (double r12 : inner) {
                              // Off-Markov points at the delta = 0 edge are never feasible and
                              // make the conditioning blocks singular.
                              if (std::abs(r12 - r0) < lambda && delta({r12, r1T, r2T}) > 1e-9) {
                                  candidates.push_back(r12);
                              }
                          }
                          for (double r12 : candidates) {
                              const CorrelationTriple rho{r12, r1T, r2T};
                              if (db_gap(p, rho) < -1e-9) continue;
                              emit(polytope(rho, p));
                          }
                      }
                  });
}

}  // namespace

Family db_region_uc_oracle(const MacUcParams& p, const GridSpec& grid) {
    return oracle_family("mac-uc db (oracle)", p, grid,
                         [](const CorrelationTriple& r, const MacUcParams& q) {
                             return uc_oracle_polytope(r, q);
                         });
}

Family db_region_ic_oracle(const IcUcParams& p, const GridSpec& grid) {
    return oracle_family("ic-uc db (oracle)", p, grid,
                         [](const CorrelationTriple& r, const IcUcParams& q) {
                             return ic_oracle_polytope(r, q);
                         });
}

FastpathResult fastpath_equivalence(const MacNfParams& p, const GridSpec& fast,
                                    const GridSpec& brute, int points) {
    const Family a = db_region_nf(p, fast, NfSweep::fast);
    const Family b = db_region_nf(p, brute, NfSweep::brute_force);
    const double hi = std::max(family_max_r1(a), family_max_r1(b));
    const std::vector<double> grid = linear_grid(hi, points);
    FastpathResult out;
    out.gap = frontier_distance(union_frontier(a, grid), union_frontier(b, grid));
    out.tolerance = 2.0 * hi / static_cast<double>(points - 1);
    return out;
}

bool VerifyReport::all_passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failed == 0; });
}

std::string VerifyReport::to_json() const {
    json doc;
    doc["seed"] = seed;
    doc["n"] = n;
    doc["passed"] = all_passed();
    json list = json::array();
    for (const auto& s : suites) {
        json j;
        j["name"] = s.name;
        j["metric"] = s.metric;
        j["draws"] = s.draws;
        j["passed"] = s.passed;
        j["failed"] = s.failed;
        j["worst"] = s.worst;
        j["tolerance"] = s.tolerance;
        j["failing_config"] = s.failing_config.empty() ? json(nullptr) : json::parse(s.failing_config);
        list.push_back(std::move(j));
    }
    doc["suites"] = std::move(list);
    return doc.dump(2) + "\n";
}

namespace {

json to_json(const CorrelationTriple& r) {
    return json{{"rho12", r.rho12}, {"rho1T", r.rho1T}, {"rho2T", r.rho2T}};
}

json to_json(const MacNfParams& p) {
    return json{{"model", "mac-nf"}, {"p1", p.p1},           {"p2", p.p2},
                {"sz", p.sigma_z2},  {"sz1", p.sigma_z1_2}, {"sz2", p.sigma_z2_2}};
}

json to_json(const MacUcParams& p) {
    return json{{"model", "mac-uc"}, {"p1", p.p1},   {"p2", p.p2},   {"sz", p.sigma_z2},
                {"sz1", p.sigma_z1_2}, {"sz2", p.sigma_z2_2}, {"h10", p.h10}, {"h20", p.h20},
                {"h12", p.h12},      {"h21", p.h21}};
}

json to_json(const IcUcParams& p) {
    return json{{"model", "ic-uc"},      {"p1", p.p1},          {"p2", p.p2},
                {"sn1", p.sigma_n1_2},   {"sn2", p.sigma_n2_2}, {"sz1", p.sigma_z1_2},
                {"sz2", p.sigma_z2_2},   {"a", p.a},            {"b", p.b},
                {"h12", p.h12},          {"h21", p.h21}};
}

json to_json(const ChannelParams& p) {
    return std::visit([](const auto& q) { return to_json(q); }, p);
}

class Tracker {
   public:
    Tracker(std::string name, std::string metric, double tolerance) {
        result_.name = std::move(name);
        result_.metric = std::move(metric);
        result_.tolerance = tolerance;
        result_.worst = 0.0;
    }

    void record(double value, bool ok, const std::function<json()>& describe) {
        ++result_.draws;
        if (std::isnan(value)) ok = false;
        if (first_ || value > result_.worst || std::isnan(value)) result_.worst = value;
        first_ = false;
        if (ok) {
            ++result_.passed;
        } else {
            ++result_.failed;
            if (result_.failing_config.empty()) {
                json j = describe();
                j["value"] = value;
                result_.failing_config = j.dump();
            }
        }
    }

    SuiteResult result() const { return result_; }

   private:
    SuiteResult result_;
    bool first_ = true;
};

double max_constraint_diff(const RatePolytope& a, const RatePolytope& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a.constraints()[i].c - b.constraints()[i].c));
    }
    return worst;
}

constexpr double kOracleTol = 1e-9;

SuiteResult suite_oracle_nf(std::uint64_t seed, int n) {
    Tracker t("oracle_nf", "max |closed form - log-det| over all bounds (bits)", kOracleTol);
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, "oracle_nf", static_cast<std::uint64_t>(i));
        const MacNfParams p = s.mac_nf();
        const CorrelationTriple rho = s.triple();
        const double cs_rho = s.uniform(0.0, 0.95);
        const NfCore core = nf_core(p);
        const double d = std::max(max_constraint_diff(nf_polytope(rho, core), nf_oracle_polytope(rho, p)),
                                  max_constraint_diff(nf_polytope({cs_rho, 0.0, 0.0}, core),
                                                      nf_cutset_oracle_polytope(cs_rho, p)));
        t.record(d, d <= kOracleTol, [&] {
            return json{{"params", to_json(p)}, {"rho", to_json(rho)}, {"cutset_rho", cs_rho}};
        });
    }
    return t.result();
}

SuiteResult suite_oracle_uc(std::uint64_t seed, int n) {
    Tracker t("oracle_uc", "max |closed form - log-det| over all bounds (bits)", kOracleTol);
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, "oracle_uc", static_cast<std::uint64_t>(i));
        const MacUcParams p = s.mac_uc();
        const CorrelationTriple rho = s.markov_triple();
        const double cs_rho = s.uniform(0.0, 0.95);
        const double d = std::max(
            max_constraint_diff(uc_db_polytope(rho.rho1T, rho.rho2T, p), uc_oracle_polytope(rho, p)),
            max_constraint_diff(uc_cutset_polytope(cs_rho, p), uc_cutset_oracle_polytope(cs_rho, p)));
        t.record(d, d <= kOracleTol, [&] {
            return json{{"params", to_json(p)}, {"rho", to_json(rho)}, {"cutset_rho", cs_rho}};
        });
    }
    return t.result();
}

SuiteResult suite_oracle_ic(std::uint64_t seed, int n) {
    Tracker t("oracle_ic", "max |closed form - log-det| over all bounds (bits)", kOracleTol);
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, "oracle_ic", static_cast<std::uint64_t>(i));
        const IcUcParams p = s.ic_uc();
        const CorrelationTriple rho = s.markov_triple();
        const double cs_rho = s.uniform(0.0, 0.95);
        const double d = std::max(
            max_constraint_diff(ic_db_polytope(rho.rho1T, rho.rho2T, p), ic_oracle_polytope(rho, p)),
            max_constraint_diff(ic_cutset_polytope(cs_rho, p), ic_cutset_oracle_polytope(cs_rho, p)));
        t.record(d, d <= kOracleTol, [&] {
            return json{{"params", to_json(p)}, {"rho", to_json(rho)}, {"cutset_rho", cs_rho}};
        });
    }
    return t.result();
}

SuiteResult suite_db_feasibility_nf(std::uint64_t seed, int n) {
    Tracker t("db_feasibility_nf", "max |closed-form gap - log-det gap| (bits)", kOracleTol);
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, "db_feasibility_nf", static_cast<std::uint64_t>(i));
        const MacNfParams p = s.mac_nf();
        const CorrelationTriple rho = s.triple();
        const double closed = db_gap_nf_closed(rho, p);
        const double oracle = db_gap(p, rho);
        const bool predicate = db_feasible_nf(rho, p);
        const bool agree = predicate == (oracle >= -kOracleTol) || std::abs(closed) <= kOracleTol;
        const double d = std::abs(closed - oracle);
        t.record(d, agree && d <= kOracleTol, [&] {
            return json{{"params", to_json(p)}, {"rho", to_json(rho)}, {"closed_gap", closed},
                        {"oracle_gap", oracle},   {"feasible", predicate}};
        });
    }
    return t.result();
}

SuiteResult suite_epi(std::uint64_t seed, int n) {
    Tracker t("epi", "max (rhs - lhs) in nats", 1e-12);
    const int draws = 10 * n;
    for (int i = 0; i < draws; ++i) {
        ConfigSampler s(seed, "epi", static_cast<std::uint64_t>(i));
        const MacNfParams p = s.mac_nf();
        const CorrelationTriple rho = s.triple();
        const EpiResult r = epi_lower_bound_check(p, rho);
        const bool same = std::abs(r.rhs - r.rhs_kappa) <= 1e-12 * std::max(1.0, std::abs(r.rhs));
        t.record(r.rhs - r.lhs, r.ok && same, [&] {
            return json{{"params", to_json(p)}, {"rho", to_json(rho)}, {"lhs", r.lhs},
                        {"rhs", r.rhs},         {"rhs_kappa", r.rhs_kappa}};
        });
    }
    return t.result();
}

std::vector<MacUcParams> markov_uc_params() {
    std::vector<MacUcParams> out;
    out.push_back(MacUcParams{});
    MacUcParams high_power;
    high_power.p1 = high_power.p2 = 5.0;
    high_power.sigma_z2 = 2.0;
    out.push_back(high_power);
    MacUcParams noisy_coop;
    noisy_coop.sigma_z1_2 = noisy_coop.sigma_z2_2 = 20.0;
    out.push_back(noisy_coop);
    MacUcParams asym_gains;
    asym_gains.h12 = 3.0;
    asym_gains.h21 = 2.0;
    out.push_back(asym_gains);
    MacUcParams one_sided;
    one_sided.h12 = 2.0;
    one_sided.h21 = 0.0;
    out.push_back(one_sided);
    return out;
}

std::vector<IcUcParams> markov_ic_params() {
    std::vector<IcUcParams> out;
    IcUcParams strong;
    strong.h12 = strong.h21 = 2.0;
    out.push_back(strong);
    IcUcParams weak;
    weak.a = weak.b = 0.5;
    weak.h12 = weak.h21 = 0.1;
    out.push_back(weak);
    IcUcParams mid_coop;
    mid_coop.a = mid_coop.b = 0.5;
    mid_coop.h12 = mid_coop.h21 = 1.0;
    out.push_back(mid_coop);
    return out;
}

template <typename P>
SuiteResult markov_suite(const char* name, const std::vector<P>& sets, std::uint64_t seed, int n) {
    Tracker t(name, "max |gap| over exact-Markov draws (bits)", kOracleTol);
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, name, static_cast<std::uint64_t>(i));
        const P& p = sets[static_cast<std::size_t>(i) % sets.size()];
        CorrelationTriple rho = s.markov_triple();
        const bool exact = s.coin();
        if (!exact) {
            const double lambda = lambda_bound(rho.rho1T, rho.rho2T);
            const double r0 = rho.rho12;
            const double lo = std::max(-0.95, r0 - lambda);
            const double hi = std::min(0.95, r0 + lambda);
            rho.rho12 = s.uniform(lo, hi);
        }
        const double gap = db_gap(p, rho);
        const double dev = std::abs(rho.rho12 - rho.rho1T * rho.rho2T);
        const bool ok = (std::abs(gap) <= kOracleTol) == (dev <= 1e-6);
        t.record(exact ? std::abs(gap) : 0.0, ok, [&] {
            return json{{"params", to_json(p)}, {"rho", to_json(rho)}, {"gap", gap}};
        });
    }
    return t.result();
}

// Expanded quartic form of g, independent of the f1/f2/f3 route.
double g_quartic(double alpha, double r1, double r2, const NfCore& c) {
    const double u1 = 1.0 - r1 * r1;
    const double u2 = 1.0 - r2 * r2;
    const double l2 = u1 * u2;
    const double a2 = alpha * alpha;
    double g = -a2 * (c.p1 / u2 + c.p2 / u1) - 2.0 * alpha * std::sqrt(c.p1 * c.p2);
    if (!std::isinf(c.eta)) g += (l2 - a2) * (l2 - a2) * c.p1 * c.p2 / (l2 * c.eta);
    return g;
}

double scan_root(double r1, double r2, const NfCore& c) {
    const double lambda = lambda_bound(r1, r2);
    if (lambda <= 1e-9) return 0.0;
    if (g_quartic(lambda, r1, r2, c) >= 0.0) return lambda;
    const double step = 1e-5;
    double lo = 0.0;
    double hi = lambda;
    for (double a = step; a < lambda; a += step) {
        if (g_quartic(a, r1, r2, c) < 0.0) {
            hi = a;
            break;
        }
        lo = a;
    }
    for (int k = 0; k < 200 && hi - lo > 1e-14; ++k) {
        const double mid = 0.5 * (lo + hi);
        (g_quartic(mid, r1, r2, c) >= 0.0 ? lo : hi) = mid;
    }
    return lo;
}

SuiteResult suite_alpha_star(std::uint64_t seed, int n) {
    Tracker t("alpha_star", "|bisection - grid scan| root difference", kOracleTol);
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, "alpha_star", static_cast<std::uint64_t>(i));
        const MacNfParams p = s.mac_nf();
        const double r1 = s.uniform(-0.95, 0.95);
        const double r2 = s.uniform(-0.95, 0.95);
        const NfCore core = nf_core(p);
        const double a = alpha_star(r1, r2, core);
        const double oracle = scan_root(r1, r2, core);
        const double d = std::abs(a - oracle);
        t.record(d, d <= kOracleTol, [&] {
            return json{{"params", to_json(p)}, {"rho1T", r1}, {"rho2T", r2}, {"alpha_star", a},
                        {"scan_root", oracle}};
        });
    }
    return t.result();
}

SuiteResult suite_dg_fd(std::uint64_t seed, int n) {
    Tracker t("dg_fd", "max relative |dg - central difference|", 1e-6);
    const double h = 1e-6;
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, "dg_fd", static_cast<std::uint64_t>(i));
        const MacNfParams p = s.mac_nf();
        const NfCore core = nf_core(p);
        double r1 = 0.0;
        double r2 = 0.0;
        double lambda = 0.0;
        do {
            r1 = s.uniform(-0.95, 0.95);
            r2 = s.uniform(-0.95, 0.95);
            lambda = lambda_bound(r1, r2);
        } while (lambda < 1e-3);
        const double alpha = s.uniform(2.0 * h, lambda - 2.0 * h);
        const double fd =
            (g_alpha(alpha + h, r1, r2, core) - g_alpha(alpha - h, r1, r2, core)) / (2.0 * h);
        const double exact = dg_dalpha(alpha, r1, r2, core);
        const double rel = std::abs(fd - exact) / std::max(std::abs(exact), 1e-300);
        t.record(rel, rel <= 1e-6 && exact <= 0.0, [&] {
            return json{{"params", to_json(p)}, {"rho1T", r1}, {"rho2T", r2}, {"alpha", alpha},
                        {"dg", exact},          {"fd", fd}};
        });
    }
    return t.result();
}

ChannelParams random_model(ConfigSampler& s, int i) {
    switch (i % 3) {
        case 0:
            return s.mac_nf();
        case 1:
            return s.mac_uc();
        default:
            return s.ic_uc();
    }
}

SuiteResult suite_chain_rule(std::uint64_t seed, int n) {
    Tracker t("chain_rule", "|direct gap - chain-rule gap| (bits)", kOracleTol);
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, "chain_rule", static_cast<std::uint64_t>(i));
        const ChannelParams p = random_model(s, i);
        const CorrelationTriple rho = s.triple();
        const double d = std::abs(db_gap(p, rho) - db_gap_direct(p, rho));
        t.record(d, d <= kOracleTol, [&] { return json{{"params", to_json(p)}, {"rho", to_json(rho)}}; });
    }
    return t.result();
}

std::vector<double> sample_informations(const ChannelParams& p, const CorrelationTriple& rho,
                                        double p_t) {
    const JointGaussianSystem sys = build_joint_system(p, rho, p_t);
    const bool ic = std::holds_alternative<IcUcParams>(p);
    const Var y = ic ? Var::Y1 : Var::Y;
    return {gaussian_cmi(sys, {Var::X1}, {y}, {Var::X2, Var::T}),
            gaussian_cmi(sys, {Var::X1, Var::X2}, {y}, {Var::T}),
            gaussian_cmi(sys, {Var::X1}, {Var::X2}, {Var::T}),
            gaussian_cmi(sys, {Var::X1}, {Var::YF1, Var::YF2}, {Var::X2, Var::T}),
            gaussian_cmi(sys, {Var::X1, Var::X2}, {Var::YF1, Var::YF2}, {Var::T})};
}

SuiteResult suite_t_scaling(std::uint64_t seed, int n) {
    Tracker t("t_scaling", "max |I(P_T = 100) - I(P_T = 1)| (bits)", 1e-10);
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, "t_scaling", static_cast<std::uint64_t>(i));
        const ChannelParams p = random_model(s, i);
        const CorrelationTriple rho = s.triple();
        const auto a = sample_informations(p, rho, 1.0);
        const auto b = sample_informations(p, rho, 100.0);
        double d = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
        t.record(d, d <= 1e-10, [&] { return json{{"params", to_json(p)}, {"rho", to_json(rho)}}; });
    }
    return t.result();
}

SuiteResult suite_psd(std::uint64_t seed, int n) {
    Tracker t("psd", "max (-min eigenvalue / trace)", 1e-10);
    const std::vector<double> axis = rho_lattice(0.005, RhoRange::symmetric);
    for (int i = 0; i < n; ++i) {
        ConfigSampler s(seed, "psd", static_cast<std::uint64_t>(i));
        const ChannelParams p = random_model(s, i);
        CorrelationTriple rho;
        switch ((i / 3) % 3) {
            case 0:
                rho = s.triple();
                break;
            case 1: {
                // Lattice corner values, Markov rho12.
                const auto pick = [&] {
                    const auto k = static_cast<std::size_t>(s.uniform(0.0, 1.0) * static_cast<double>(axis.size()));
                    return axis[std::min(k, axis.size() - 1)];
                };
                rho.rho1T = pick();
                rho.rho2T = pick();
                rho.rho12 = rho.rho1T * rho.rho2T;
                break;
            }
            default: {
                // delta = 0 boundary.
                rho.rho1T = s.uniform(-0.95, 0.95);
                rho.rho2T = s.uniform(-0.95, 0.95);
                const double sign = s.coin() ? 1.0 : -1.0;
                rho.rho12 = std::clamp(rho.rho1T * rho.rho2T + sign * lambda_bound(rho.rho1T, rho.rho2T),
                                       -1.0, 1.0);
                break;
            }
        }
        const JointGaussianSystem sys = build_joint_system(p, rho);
        const double v = -sys.min_eigenvalue() / sys.cov().trace();
        t.record(v, sys.is_psd(), [&] { return json{{"params", to_json(p)}, {"rho", to_json(rho)}}; });
    }
    return t.result();
}

SuiteResult suite_fastpath(std::uint64_t /*seed*/, int /*n*/) {
    Tracker t("fastpath_equivalence", "sup |fast - brute| / (2 R1 steps)", 1.0);
    GridSpec fast;
    fast.step = 0.05;
    fast.fine_step = 1e-3;
    GridSpec brute;
    brute.step = 0.05;
    brute.fine_step = 1e-3;
    for (double sigma : {0.3, 1.0, 2.0, 5.0, 10.0}) {
        MacNfParams p;
        p.sigma_z1_2 = p.sigma_z2_2 = sigma;
        const FastpathResult r = fastpath_equivalence(p, fast, brute);
        t.record(r.gap / r.tolerance, r.ok(), [&] {
            return json{{"params", to_json(p)}, {"gap", r.gap}, {"tolerance", r.tolerance}};
        });
    }
    return t.result();
}

using SuiteFn = SuiteResult (*)(std::uint64_t, int);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"oracle_nf", suite_oracle_nf},
        {"oracle_uc", suite_oracle_uc},
        {"oracle_ic", suite_oracle_ic},
        {"db_feasibility_nf", suite_db_feasibility_nf},
        {"epi", suite_epi},
        {"markov_uc",
         [](std::uint64_t seed, int n) { return markov_suite("markov_uc", markov_uc_params(), seed, n); }},
        {"markov_ic",
         [](std::uint64_t seed, int n) { return markov_suite("markov_ic", markov_ic_params(), seed, n); }},
        {"alpha_star", suite_alpha_star},
        {"dg_fd", suite_dg_fd},
        {"chain_rule", suite_chain_rule},
        {"t_scaling", suite_t_scaling},
        {"psd", suite_psd},
        {"fastpath_equivalence", suite_fastpath},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

SuiteResult run_suite(std::string_view name, std::uint64_t seed, int n) {
    if (n < 1) throw DomainError("n must be ≥ 1");
    for (const auto& [suite, fn] : registry()) {
        if (suite == name) return fn(seed, n);
    }
    throw DomainError("unknown verification suite: " + std::string(name));
}

VerifyReport run_verification(std::uint64_t seed, int n) {
    if (n < 1) throw DomainError("n must be ≥ 1");
    VerifyReport report;
    report.seed = seed;
    report.n = n;
    for (const auto& [name, fn] : registry()) report.suites.push_back(fn(seed, n));
    return report;
}

}  // namespace dbbound
