#include "dbbound/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>
#include <vector>

#include "dbbound/errors.hpp"
#include "dbbound/ic_uc.hpp"
#include "dbbound/io.hpp"
#include "dbbound/mac_nf.hpp"
#include "dbbound/mac_uc.hpp"
#include "dbbound/units.hpp"
#include "dbbound/verify.hpp"

namespace dbbound {

namespace {

using ojson = nlohmann::ordered_json;

const char* const kParamTable = R"(Parameter flags (config files use the same names without dashes):
  flag        symbol          meaning                                   models
  --p1 --p2   P1, P2          transmit powers                           all
  --sz        sigma_Z^2       receiver noise                            mac-*
  --sz1       sigma_Z1^2      feedback/cooperation noise at user 1      mac-nf, mac-uc, ic-uc
  --sz2       sigma_Z2^2      feedback/cooperation noise at user 2      mac-nf, mac-uc, ic-uc
  --sv        sigma_V^2       common feedback noise                     mac-nf-common
  --h10 --h20 h10, h20        direct-link power gains                   mac-uc
  --h12 --h21 h12, h21        cooperation gains (1->2, 2->1)            mac-uc, ic-uc
  --sn1 --sn2 sigma_N1^2, ^2  receiver noises                           ic-uc
  --a --b     a, b            cross-link gains                          ic-uc
Noise variances of feedback or cooperation links accept "inf".
Bounds: mac-nf {db, cutset, nofb, ozarow}; mac-nf-common {db, cutset, nofb};
        mac-uc {db, cutset, nocoop, totalcoop}; ic-uc {db, cutset, nocoop}.
Exit codes: 0 ok, 1 check failed, 2 invalid configuration, 3 numeric failure.
Environment: DBBOUND_THREADS caps the worker threads.)";

struct ModelInfo {
    const char* name;
    std::vector<std::string> params;
    std::vector<std::string> bounds;
    ModelKind kind;
};

const std::vector<ModelInfo>& models() {
    static const std::vector<ModelInfo> table = {
        {"mac-nf", {"p1", "p2", "sz", "sz1", "sz2"}, {"db", "cutset", "nofb", "ozarow"}, ModelKind::mac_nf},
        {"mac-nf-common", {"p1", "p2", "sz", "sv"}, {"db", "cutset", "nofb"}, ModelKind::mac_nf},
        {"mac-uc",
         {"p1", "p2", "sz", "sz1", "sz2", "h10", "h20", "h12", "h21"},
         {"db", "cutset", "nocoop", "totalcoop"},
         ModelKind::mac_uc},
        {"ic-uc",
         {"p1", "p2", "sn1", "sn2", "sz1", "sz2", "a", "b", "h12", "h21"},
         {"db", "cutset", "nocoop"},
         ModelKind::ic_uc},
    };
    return table;
}

const ModelInfo& model_info(const std::string& name) {
    for (const auto& m : models()) {
        if (name == m.name) return m;
    }
    throw InputError("model: unknown model '" + name + "' (expected mac-nf, mac-nf-common, mac-uc, ic-uc)");
}

const std::vector<std::string> kAllParams = {"p1",  "p2",  "sz",  "sz1", "sz2", "sv", "h10", "h20",
                                             "h12", "h21", "sn1", "sn2", "a",   "b"};
const std::vector<std::string> kBounds = {"db", "cutset", "nofb", "nocoop", "ozarow", "totalcoop"};

double parse_number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError(key + ": expected a number, got '" + text + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw InputError(key + ": expected true or false, got '" + text + "'");
}

std::string take(std::map<std::string, std::string>& kv, const std::string& key,
                 const std::string& fallback = {}) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::string v = it->second;
    kv.erase(it);
    return v;
}

bool take_bool(std::map<std::string, std::string>& kv, const std::string& key) {
    const std::string v = take(kv, key);
    return v.empty() ? false : parse_bool(key, v);
}

double param(const RunConfig& cfg, const char* key, double fallback) {
    const auto it = cfg.params.find(key);
    return it == cfg.params.end() ? fallback : it->second;
}

MacNfParams nf_params(const RunConfig& cfg) {
    MacNfParams p;
    p.p1 = param(cfg, "p1", p.p1);
    p.p2 = param(cfg, "p2", p.p2);
    p.sigma_z2 = param(cfg, "sz", p.sigma_z2);
    p.sigma_z1_2 = param(cfg, "sz1", p.sigma_z1_2);
    p.sigma_z2_2 = param(cfg, "sz2", p.sigma_z2_2);
    p.validate();
    return p;
}

MacNfCommonParams nf_common_params(const RunConfig& cfg) {
    MacNfCommonParams p;
    p.p1 = param(cfg, "p1", p.p1);
    p.p2 = param(cfg, "p2", p.p2);
    p.sigma_z2 = param(cfg, "sz", p.sigma_z2);
    p.sigma_v2 = param(cfg, "sv", p.sigma_v2);
    p.validate();
    return p;
}

MacUcParams uc_params(const RunConfig& cfg) {
    MacUcParams p;
    p.p1 = param(cfg, "p1", p.p1);
    p.p2 = param(cfg, "p2", p.p2);
    p.sigma_z2 = param(cfg, "sz", p.sigma_z2);
    p.sigma_z1_2 = param(cfg, "sz1", p.sigma_z1_2);
    p.sigma_z2_2 = param(cfg, "sz2", p.sigma_z2_2);
    p.h10 = param(cfg, "h10", p.h10);
    p.h20 = param(cfg, "h20", p.h20);
    p.h12 = param(cfg, "h12", p.h12);
    p.h21 = param(cfg, "h21", p.h21);
    p.validate();
    return p;
}

IcUcParams ic_params(const RunConfig& cfg) {
    IcUcParams p;
    p.p1 = param(cfg, "p1", p.p1);
    p.p2 = param(cfg, "p2", p.p2);
    p.sigma_n1_2 = param(cfg, "sn1", p.sigma_n1_2);
    p.sigma_n2_2 = param(cfg, "sn2", p.sigma_n2_2);
    p.sigma_z1_2 = param(cfg, "sz1", p.sigma_z1_2);
    p.sigma_z2_2 = param(cfg, "sz2", p.sigma_z2_2);
    p.a = param(cfg, "a", p.a);
    p.b = param(cfg, "b", p.b);
    p.h12 = param(cfg, "h12", p.h12);
    p.h21 = param(cfg, "h21", p.h21);
    p.validate();
    return p;
}

}  // namespace

RunConfig make_run_config(const std::map<std::string, std::string>& input) {
    std::map<std::string, std::string> kv = input;
    RunConfig cfg;
    cfg.model = take(kv, "model");
    if (cfg.model.empty()) throw InputError("model: no model given");
    const ModelInfo& info = model_info(cfg.model);
    cfg.bound = take(kv, "bound");
    if (cfg.bound.empty()) throw InputError("bound: no bound selected");
    if (std::find(info.bounds.begin(), info.bounds.end(), cfg.bound) == info.bounds.end()) {
        throw InputError("bound: '" + cfg.bound + "' is not available for model " + cfg.model);
    }
    for (const auto& key : kAllParams) {
        const auto it = kv.find(key);
        if (it == kv.end()) continue;
        if (std::find(info.params.begin(), info.params.end(), key) == info.params.end()) {
            throw InputError(key + ": not a parameter of model " + cfg.model);
        }
        cfg.params[key] = parse_number(key, it->second);
        kv.erase(it);
    }
    cfg.grid = default_grid(info.kind);
    if (auto v = take(kv, "grid"); !v.empty()) cfg.grid.step = parse_number("grid", v);
    if (auto v = take(kv, "fine-step"); !v.empty()) cfg.grid.fine_step = parse_number("fine-step", v);
    if (auto v = take(kv, "r1-points"); !v.empty()) {
        const double n = parse_number("r1-points", v);
        if (n != std::floor(n) || n < 2 || n > 1e6) throw InputError("r1-points: expected an integer >= 2");
        cfg.grid.r1_points = static_cast<int>(n);
    }
    if (auto v = take(kv, "rho-range"); !v.empty()) {
        if (v == "unit") {
            cfg.grid.range = RhoRange::unit;
        } else if (v == "symmetric") {
            cfg.grid.range = RhoRange::symmetric;
        } else {
            throw InputError("rho-range: expected unit or symmetric, got '" + v + "'");
        }
    }
    cfg.full_sweep = take_bool(kv, "full-sweep");
    if (!kv.empty()) throw InputError(kv.begin()->first + ": unknown key");
    try {
        cfg.grid.validate();
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    // Validate parameters now so errors surface before any sweep.
    (void)make_family(cfg);
    return cfg;
}

Family make_family(const RunConfig& cfg) {
    const std::string& b = cfg.bound;
    if (cfg.model == "mac-nf") {
        const MacNfParams p = nf_params(cfg);
        if (b == "db") return db_region_nf(p, cfg.grid, cfg.full_sweep ? NfSweep::brute_force : NfSweep::fast);
        if (b == "cutset") return cutset_region_nf(p, cfg.grid);
        if (b == "nofb") return Family::single("mac-nf nofb", nofeedback_capacity(p));
        if (b == "ozarow") return ozarow_reference(p, cfg.grid);
    } else if (cfg.model == "mac-nf-common") {
        const MacNfCommonParams p = nf_common_params(cfg);
        MacNfParams base;
        base.p1 = p.p1;
        base.p2 = p.p2;
        base.sigma_z2 = p.sigma_z2;
        // Same effective feedback noise sz + sv as the common-feedback model.
        base.sigma_z1_2 = p.sigma_v2;
        base.sigma_z2_2 = kInfiniteVariance;
        if (b == "db") {
            return db_region_nf_common(p, cfg.grid, cfg.full_sweep ? NfSweep::brute_force : NfSweep::fast);
        }
        if (b == "cutset") return cutset_region_nf(base, cfg.grid);
        if (b == "nofb") return Family::single("mac-nf-common nofb", nofeedback_capacity(base));
    } else if (cfg.model == "mac-uc") {
        const MacUcParams p = uc_params(cfg);
        if (b == "db") return cfg.full_sweep ? db_region_uc_oracle(p, cfg.grid) : db_region_uc(p, cfg.grid);
        if (b == "cutset") return cutset_region_uc(p, cfg.grid);
        if (b == "nocoop") return Family::single("mac-uc nocoop", nocoop_capacity(p));
        if (b == "totalcoop") {
            RatePolytope line;
            line.add_sum(total_coop_line(p));
            return Family::single("mac-uc totalcoop", line);
        }
    } else if (cfg.model == "ic-uc") {
        const IcUcParams p = ic_params(cfg);
        if (b == "db") return cfg.full_sweep ? db_region_ic_oracle(p, cfg.grid) : db_region_ic(p, cfg.grid);
        if (b == "cutset") return cutset_region_ic(p, cfg.grid);
        if (b == "nocoop") return Family::single("ic-uc nocoop", ic_nocoop_polytope(p));
    }
    throw InputError("bound: '" + b + "' is not available for model " + cfg.model);
}

namespace {

class UnitGuard {
   public:
    explicit UnitGuard(bool nats) : saved_(info_unit()) {
        set_info_unit(nats ? InfoUnit::nats : InfoUnit::bits);
    }
    ~UnitGuard() { set_info_unit(saved_); }
    UnitGuard(const UnitGuard&) = delete;
    UnitGuard& operator=(const UnitGuard&) = delete;

   private:
    InfoUnit saved_;
};

// String-valued options collected into a key/value map after parsing.
class OptionBag {
   public:
    void add(CLI::App* app, const std::string& key, const std::string& help) {
        app->add_option("--" + key, storage_[key], help);
        keys_.push_back(key);
    }
    void add_params(CLI::App* app) {
        for (const auto& k : kAllParams) add(app, k, "channel parameter (see table below)");
    }
    void add_grid(CLI::App* app) {
        add(app, "grid", "outer correlation lattice spacing, in (0, 0.2]");
        add(app, "fine-step", "inner rho12 / cut-set rho spacing");
        add(app, "rho-range", "unit or symmetric");
        add(app, "r1-points", "frontier samples (default 401)");
    }
    // Only options that were given on the command line.
    void overlay(CLI::App* app, std::map<std::string, std::string>& kv) const {
        for (const auto& k : keys_) {
            if (app->count("--" + k) > 0) kv[k] = storage_.at(k);
        }
    }

   private:
    std::map<std::string, std::string> storage_;
    std::vector<std::string> keys_;
};

void set_flag(std::map<std::string, std::string>& kv, const std::string& key, bool on) {
    if (on) kv[key] = "true";
}

ojson params_json(const RunConfig& cfg) {
    ojson j = ojson::object();
    for (const auto& [k, v] : cfg.params) j[k] = hex_float(v);
    return j;
}

ojson grid_json(const GridSpec& g) {
    return ojson{{"step", hex_float(g.step)},
                 {"fine_step", hex_float(g.fine_step)},
                 {"rho_range", to_string(g.range)},
                 {"r1_points", g.r1_points}};
}

std::string unit_suffix() { return std::string("_") + info_unit_name(); }

int cmd_bound(std::map<std::string, std::string> kv, std::ostream& out, std::ostream& err) {
    const std::string output = take(kv, "output");
    const std::string format = take(kv, "format", "csv");
    const bool envelope = take_bool(kv, "convexify");
    const bool nats = take_bool(kv, "nats");
    if (format != "csv" && format != "json") throw InputError("format: expected csv or json, got '" + format + "'");
    UnitGuard unit(nats);
    const RunConfig cfg = make_run_config(kv);
    const Family family = make_family(cfg);

    const auto start = std::chrono::steady_clock::now();
    const RegionFrontier frontier = union_frontier(family, cfg.grid.r1_points);
    const double max_sum = max_sum_rate(family);
    const bool improves = convexify_improves(frontier);
    const RegionFrontier written = envelope ? convexify(frontier) : frontier;
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ojson meta;
    meta["tool"] = "dbbound";
    meta["version"] = kToolVersion;
    meta["model"] = cfg.model;
    meta["bound"] = cfg.bound;
    meta["unit"] = info_unit_name();
    meta["params"] = params_json(cfg);
    meta["grid"] = grid_json(cfg.grid);
    meta["full_sweep"] = cfg.full_sweep;
    meta["convexified"] = envelope;
    meta["envelope_improves"] = improves;
    meta["max_sum"] = hex_float(max_sum);
    meta["wall_time_s"] = wall;

    std::ostream& summary = output.empty() ? err : out;
    if (format == "csv") {
        const std::string csv = frontier_to_csv(written);
        if (output.empty()) {
            out << csv;
        } else {
            atomic_write(output, csv);
            atomic_write(output + ".json", meta.dump(2) + "\n");
        }
    } else {
        ojson doc = meta;
        ojson samples = ojson::array();
        for (const auto& s : written.samples) samples.push_back({s.r1, s.r2});
        doc["frontier"] = std::move(samples);
        const std::string text = doc.dump(2) + "\n";
        if (output.empty()) {
            out << text;
        } else {
            atomic_write(output, text);
        }
    }
    summary << "model=" << cfg.model << " bound=" << cfg.bound << "\n";
    summary << "samples=" << written.samples.size() << "\n";
    summary << "max_r1" << unit_suffix() << "=" << format_g9(written.max_r1()) << "\n";
    summary << "max_sum" << unit_suffix() << "=" << format_g9(max_sum) << "\n";
    if (cfg.bound == "totalcoop") summary << "total_coop_sum" << unit_suffix() << "=" << format_g9(max_sum) << "\n";
    summary << "envelope_improves=" << (improves ? "yes" : "no") << "\n";
    if (!output.empty()) summary << "wrote " << output << "\n";
    return kExitOk;
}

const char* yes_no(bool v) { return v ? "yes" : "no"; }

int cmd_compare(std::map<std::string, std::string> a_kv, std::map<std::string, std::string> b_kv,
                double tol, int points, bool nats, std::ostream& out) {
    if (!(tol >= 0.0)) throw InputError("tol: must be nonnegative");
    UnitGuard unit(nats);
    const RunConfig a = make_run_config(a_kv);
    const RunConfig b = make_run_config(b_kv);
    const Family fa = make_family(a);
    const Family fb = make_family(b);
    const FrontierComparison cmp = compare_frontiers(fa, fb, tol, points);
    const double sum_a = max_sum_rate(fa);
    const double sum_b = max_sum_rate(fb);

    std::string relation;
    if (cmp.a_in_b && cmp.b_in_a) {
        relation = "A = B";
    } else if (cmp.a_in_b) {
        relation = "A ⊂ B (strict)";
    } else if (cmp.b_in_a) {
        relation = "B ⊂ A (strict)";
    } else {
        relation = "incomparable";
    }
    const std::string u = unit_suffix();
    out << "a=" << a.model << " " << a.bound << "\n";
    out << "b=" << b.model << " " << b.bound << "\n";
    out << "tol" << u << "=" << format_g9(tol) << "\n";
    out << "a_subset_b=" << yes_no(cmp.a_in_b) << "\n";
    out << "b_subset_a=" << yes_no(cmp.b_in_a) << "\n";
    out << "relation=" << relation << "\n";
    out << "max_gap" << u << "=" << format_g9(std::max(0.0, cmp.max_excess_b)) << "\n";
    out << "max_gap_at_r1" << u << "=" << format_g9(cmp.r1_at_max_excess_b) << "\n";
    out << "max_excess_a_over_b" << u << "=" << format_g9(std::max(0.0, cmp.max_excess_a)) << "\n";
    out << "max_sum_a" << u << "=" << format_g9(sum_a) << "\n";
    out << "max_sum_b" << u << "=" << format_g9(sum_b) << "\n";
    out << "strict_at_sum_point=" << yes_no(sum_b > sum_a + tol) << "\n";
    return cmp.a_in_b ? kExitOk : kExitCheckFailed;
}

int cmd_sweep_h(std::map<std::string, std::string> kv, double h_min, double h_max, double step,
                std::ostream& out, std::ostream& err) {
    const std::string output = take(kv, "output");
    const bool nats = take_bool(kv, "nats");
    UnitGuard unit(nats);
    if (kv.count("model") == 0) kv["model"] = "ic-uc";
    if (kv["model"] != "ic-uc") throw InputError("model: sweep-h is defined for ic-uc only");
    kv.erase("h12");
    kv.erase("h21");
    kv["bound"] = "db";
    const RunConfig cfg = make_run_config(kv);
    if (!(h_min >= 0.0) || !(h_max >= h_min) || !std::isfinite(h_max)) {
        throw InputError("h-min/h-max: need 0 <= h-min <= h-max");
    }
    if (!(step > 0.0)) throw InputError("step: must be positive");
    const long count = std::lround((h_max - h_min) / step);
    std::vector<double> hs;
    for (long k = 0; k <= count; ++k) hs.push_back(h_min + static_cast<double>(k) * step);
    const auto rows = sumrate_vs_h(ic_params(cfg), hs, cfg.grid);
    std::string csv = "h,db_sum_" + std::string(info_unit_name()) + ",cs_sum_" + info_unit_name() + "\n";
    for (const auto& r : rows) {
        csv += format_g9(r.h) + "," + format_g9(r.db_sum) + "," + format_g9(r.cs_sum) + "\n";
    }
    if (output.empty()) {
        out << csv;
    } else {
        atomic_write(output, csv);
        out << "rows=" << rows.size() << "\nwrote " << output << "\n";
    }
    (void)err;
    return kExitOk;
}

int cmd_verify(std::uint64_t seed, int n, const std::string& suite, const std::string& output,
               std::ostream& out) {
    if (n < 1) throw InputError("n must be ≥ 1");
    UnitGuard unit(false);
    VerifyReport report;
    if (suite.empty()) {
        report = run_verification(seed, n);
    } else {
        report.seed = seed;
        report.n = n;
        report.suites.push_back(run_suite(suite, seed, n));
    }
    const std::string text = report.to_json();
    if (output.empty()) {
        out << text;
    } else {
        atomic_write(output, text);
        out << "seed=" << seed << " n=" << n << "\n";
        for (const auto& s : report.suites) {
            out << s.name << ": " << s.passed << "/" << s.draws << " passed, worst=" << format_g9(s.worst)
                << " (tol " << format_g9(s.tolerance) << ")\n";
        }
        out << (report.all_passed() ? "PASS" : "FAIL") << "\nwrote " << output << "\n";
    }
    return report.all_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dependence-balance and cut-set outer bounds for Gaussian two-user channels", "dbbound"};
    app.require_subcommand(1);
    app.footer(kParamTable);

    // bound
    auto* bound = app.add_subcommand("bound", "Compute one region frontier");
    std::string bound_model;
    std::string bound_config;
    bound->add_option("model", bound_model, "mac-nf | mac-nf-common | mac-uc | ic-uc");
    bound->add_option("--config", bound_config, "key = value file; flags override it");
    std::map<std::string, bool> bound_flags;
    for (const auto& b : kBounds) bound->add_flag("--" + b, bound_flags[b], "select the " + b + " bound");
    OptionBag bound_opts;
    bound_opts.add_params(bound);
    bound_opts.add_grid(bound);
    bound_opts.add(bound, "output", "frontier file (stdout if omitted); a .json sidecar is written next to it");
    bound_opts.add(bound, "format", "csv or json");
    bool bound_convexify = false;
    bool bound_full = false;
    bool bound_nats = false;
    bound->add_flag("--convexify", bound_convexify, "write the upper concave envelope instead of the raw union");
    bound->add_flag("--full-sweep", bound_full, "use the brute-force / log-det sweep instead of the reduced one");
    bound->add_flag("--nats", bound_nats, "report in nats");
    bound->footer(kParamTable);

    // compare
    auto* compare = app.add_subcommand("compare", "Test whether region A lies inside region B");
    std::string cmp_model;
    std::string cmp_config_a;
    std::string cmp_config_b;
    std::string cmp_bound_a;
    std::string cmp_bound_b;
    double cmp_tol = 1e-6;
    int cmp_points = 401;
    bool cmp_nats = false;
    bool cmp_full = false;
    compare->add_option("model", cmp_model, "model shared by A and B");
    compare->add_option("--config-a", cmp_config_a, "config file for A");
    compare->add_option("--config-b", cmp_config_b, "config file for B");
    compare->add_option("--bound-a", cmp_bound_a, "bound for A");
    compare->add_option("--bound-b", cmp_bound_b, "bound for B");
    compare->add_option("--tol", cmp_tol, "inclusion tolerance in rate units (default 1e-6)");
    compare->add_option("--points", cmp_points, "samples on the shared R1 grid (default 401)");
    compare->add_flag("--nats", cmp_nats, "report in nats");
    compare->add_flag("--full-sweep", cmp_full, "brute-force / log-det sweeps for both");
    OptionBag cmp_opts;
    cmp_opts.add_params(compare);
    cmp_opts.add_grid(compare);
    compare->footer(kParamTable);

    // sweep-h
    auto* sweep = app.add_subcommand("sweep-h", "IC sum-rate bounds as h12 = h21 = h varies");
    std::string sweep_model;
    std::string sweep_config;
    double h_min = 0.0;
    double h_max = 3.0;
    double h_step = 0.05;
    bool sweep_nats = false;
    sweep->add_option("model", sweep_model, "ic-uc");
    sweep->add_option("--config", sweep_config, "key = value file; flags override it");
    sweep->add_option("--h-min", h_min, "first h (default 0)");
    sweep->add_option("--h-max", h_max, "last h (default 3)");
    sweep->add_option("--step", h_step, "h spacing (default 0.05)");
    sweep->add_flag("--nats", sweep_nats, "report in nats");
    OptionBag sweep_opts;
    sweep_opts.add_params(sweep);
    sweep_opts.add_grid(sweep);
    sweep_opts.add(sweep, "output", "CSV file (stdout if omitted)");
    sweep->footer(kParamTable);

    // verify
    auto* verify = app.add_subcommand("verify", "Run the randomized verification suites");
    std::uint64_t seed = kDefaultSeed;
    int n = 1000;
    std::string suite;
    std::string verify_output;
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--n", n, "draws per suite (default 1000)");
    verify->add_option("--suite", suite, "run a single suite");
    verify->add_option("--output", verify_output, "JSON report file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidConfig;
    }

    try {
        if (bound->parsed()) {
            std::map<std::string, std::string> kv;
            if (!bound_config.empty()) kv = read_key_value_file(bound_config);
            if (!bound_model.empty()) kv["model"] = bound_model;
            int chosen = 0;
            for (const auto& [name, on] : bound_flags) {
                if (on) {
                    kv["bound"] = name;
                    ++chosen;
                }
            }
            if (chosen > 1) throw InputError("bound: choose exactly one bound flag");
            bound_opts.overlay(bound, kv);
            set_flag(kv, "convexify", bound_convexify);
            set_flag(kv, "full-sweep", bound_full);
            set_flag(kv, "nats", bound_nats);
            return cmd_bound(kv, out, err);
        }
        if (compare->parsed()) {
            std::map<std::string, std::string> a;
            std::map<std::string, std::string> b;
            if (!cmp_config_a.empty()) a = read_key_value_file(cmp_config_a);
            if (!cmp_config_b.empty()) b = read_key_value_file(cmp_config_b);
            for (auto* kv : {&a, &b}) {
                if (!cmp_model.empty()) (*kv)["model"] = cmp_model;
                cmp_opts.overlay(compare, *kv);
                set_flag(*kv, "full-sweep", cmp_full);
                // Output settings in config files do not apply to compare.
                kv->erase("output");
                kv->erase("format");
                kv->erase("convexify");
                kv->erase("nats");
            }
            if (!cmp_bound_a.empty()) a["bound"] = cmp_bound_a;
            if (!cmp_bound_b.empty()) b["bound"] = cmp_bound_b;
            if (cmp_points < 2) throw InputError("points: must be at least 2");
            return cmd_compare(a, b, cmp_tol, cmp_points, cmp_nats, out);
        }
        if (sweep->parsed()) {
            std::map<std::string, std::string> kv;
            if (!sweep_config.empty()) kv = read_key_value_file(sweep_config);
            kv.erase("bound");
            if (!sweep_model.empty()) kv["model"] = sweep_model;
            sweep_opts.overlay(sweep, kv);
            set_flag(kv, "nats", sweep_nats);
            // Sweep settings may also come from the config file.
            if (auto v = take(kv, "h-min"); !v.empty() && sweep->count("--h-min") == 0) h_min = parse_number("h-min", v);
            if (auto v = take(kv, "h-max"); !v.empty() && sweep->count("--h-max") == 0) h_max = parse_number("h-max", v);
            if (auto v = take(kv, "step"); !v.empty() && sweep->count("--step") == 0) h_step = parse_number("step", v);
            return cmd_sweep_h(kv, h_min, h_max, h_step, out, err);
        }
        if (verify->parsed()) return cmd_verify(seed, n, suite, verify_output, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumericFailure;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumericFailure;
    }
    return kExitInvalidConfig;
}

}  // namespace dbbound
