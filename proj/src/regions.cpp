#include "dbbound/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>

#include "dbbound/errors.hpp"
#include "dbbound/grid.hpp"
#include "dbbound/parallel.hpp"
#include "dbbound/units.hpp"

namespace dbbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double slack(double v) { return 1e-12 * std::max(1.0, std::abs(v)); }

}  // namespace

RatePolytope RatePolytope::pentagon(double r1, double r2, double sum) {
    RatePolytope p;
    p.add_r1(r1).add_r2(r2).add_sum(sum);
    return p;
}

RatePolytope& RatePolytope::add(double w1, double w2, double c) {
    const bool ok_weights = (w1 == 1.0 && w2 == 0.0) || (w1 == 0.0 && w2 == 1.0) ||
                            (w1 == 1.0 && w2 == 1.0);
    if (!ok_weights) throw DomainError("rate constraint weights must be (1,0), (0,1) or (1,1)");
    if (!(c >= 0.0)) throw DomainError("rate constraint bound must be nonnegative");
    if (size_ == kCapacity) throw DomainError("rate polytope is full");
    items_[size_++] = RateConstraint{w1, w2, c};
    if (w2 == 0.0) {
        r1_cap_ = std::min(r1_cap_, c);
    } else if (w1 == 0.0) {
        r2_cap_ = std::min(r2_cap_, c);
    } else {
        sum_cap_ = std::min(sum_cap_, c);
    }
    return *this;
}

double RatePolytope::max_r1() const { return std::min(r1_cap_, sum_cap_); }

std::optional<double> RatePolytope::max_r2(double r1) const {
    if (r1 < 0.0) return std::nullopt;
    const double lim = max_r1();
    if (r1 > lim + slack(lim)) return std::nullopt;
    return std::max(0.0, std::min(r2_cap_, sum_cap_ - r1));
}

double RatePolytope::max_sum() const { return std::min(sum_cap_, r1_cap_ + r2_cap_); }

double RatePolytope::max_weighted(double mu1, double mu2) const {
    if (mu1 < 0.0 || mu2 < 0.0) throw DomainError("rate weights must be nonnegative");
    auto value = [&](double r1, double r2) {
        return (mu1 == 0.0 ? 0.0 : mu1 * r1) + (mu2 == 0.0 ? 0.0 : mu2 * r2);
    };
    if (std::isinf(sum_cap_)) return value(r1_cap_, r2_cap_);
    const double a = std::min(r1_cap_, sum_cap_);
    const double b = std::min(r2_cap_, sum_cap_);
    double best = std::max(value(a, 0.0), value(0.0, b));
    best = std::max(best, value(a, std::max(0.0, std::min(r2_cap_, sum_cap_ - a))));
    best = std::max(best, value(std::max(0.0, std::min(r1_cap_, sum_cap_ - b)), b));
    return best;
}

bool RatePolytope::contains(double r1, double r2, double tol) const {
    if (r1 < -tol || r2 < -tol) return false;
    for (const auto& c : constraints()) {
        if (c.w1 * r1 + c.w2 * r2 > c.c + tol) return false;
    }
    return true;
}

std::optional<double> polytope_max_r2(const RatePolytope& p, double r1) { return p.max_r2(r1); }

Family::Family(std::string description, std::size_t blocks, Generator generate)
    : description_(std::move(description)), blocks_(blocks), generate_(std::move(generate)) {}

Family Family::single(std::string description, const RatePolytope& p) {
    return Family(std::move(description), 1,
                  [p](std::size_t, const Emit& emit) { emit(p); });
}

void Family::for_each(const Emit& emit) const {
    for (std::size_t b = 0; b < blocks_; ++b) generate_(b, emit);
}

std::optional<double> RegionFrontier::r2_at(double r1) const {
    if (samples.empty() || r1 < 0.0) return std::nullopt;
    const double hi = samples.back().r1;
    if (r1 > hi + slack(hi)) return std::nullopt;
    if (r1 >= hi) return samples.back().r2;
    auto it = std::upper_bound(samples.begin(), samples.end(), r1,
                               [](double x, const FrontierSample& s) { return x < s.r1; });
    if (it == samples.begin()) return samples.front().r2;
    const auto& right = *it;
    const auto& left = *(it - 1);
    const double t = (r1 - left.r1) / (right.r1 - left.r1);
    return left.r2 + t * (right.r2 - left.r2);
}

namespace {

// Parallel reduction over blocks with a per-worker accumulator.
template <typename Acc, typename Visit, typename Merge>
Acc reduce_family(const Family& family, Acc init, Visit visit, Merge merge, bool* any) {
    const std::size_t workers = worker_count(family.blocks());
    std::vector<Acc> partial(workers, init);
    std::vector<char> seen(workers, 0);
    parallel_tasks(family.blocks(), [&](std::size_t w, std::size_t block) {
        Acc& acc = partial[w];
        char& s = seen[w];
        family.generate(block, [&](const RatePolytope& p) {
            s = 1;
            visit(acc, p);
        });
    });
    Acc out = init;
    bool got = false;
    for (std::size_t w = 0; w < workers; ++w) {
        merge(out, partial[w]);
        got = got || seen[w] != 0;
    }
    if (any) *any = got;
    return out;
}

void require_nonempty(bool any, const Family& family) {
    if (!any) throw EmptyFamily("region family is empty: " + family.description());
}

double family_max(const Family& family, double (*value)(const RatePolytope&, const void*),
                  const void* ctx) {
    bool any = false;
    const double out = reduce_family(
        family, -kInf, [&](double& acc, const RatePolytope& p) { acc = std::max(acc, value(p, ctx)); },
        [](double& a, const double& b) { a = std::max(a, b); }, &any);
    require_nonempty(any, family);
    return out;
}

}  // namespace

double family_max_r1(const Family& family) {
    return family_max(
        family, [](const RatePolytope& p, const void*) { return p.max_r1(); }, nullptr);
}

RegionFrontier union_frontier(const Family& family, std::span<const double> r1_grid) {
    for (std::size_t i = 0; i < r1_grid.size(); ++i) {
        if (r1_grid[i] < 0.0 || (i > 0 && r1_grid[i] <= r1_grid[i - 1])) {
            throw DomainError("r1 grid must be nonnegative and strictly ascending");
        }
    }
    const std::size_t n = r1_grid.size();
    bool any = false;
    std::vector<double> best = reduce_family(
        family, std::vector<double>(n, -kInf),
        [&](std::vector<double>& acc, const RatePolytope& p) {
            const double lim = p.max_r1();
            const double reach = lim + slack(lim);
            const double r2cap = p.r2_cap();
            const double sum = p.sum_cap();
            for (std::size_t i = 0; i < n && r1_grid[i] <= reach; ++i) {
                const double v = std::max(0.0, std::min(r2cap, sum - r1_grid[i]));
                if (v > acc[i]) acc[i] = v;
            }
        },
        [](std::vector<double>& a, const std::vector<double>& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::max(a[i], b[i]);
        },
        &any);
    require_nonempty(any, family);

    RegionFrontier out;
    out.meta = family.description();
    std::size_t keep = n;
    while (keep > 0 && best[keep - 1] == -kInf) --keep;
    for (std::size_t i = keep; i-- > 1;) best[i - 1] = std::max(best[i - 1], best[i]);
    out.samples.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) out.samples.push_back({r1_grid[i], best[i]});
    return out;
}

RegionFrontier union_frontier(const Family& family, int points) {
    if (points < 2) throw DomainError("frontier needs at least 2 points");
    const double hi = family_max_r1(family);
    if (!std::isfinite(hi)) throw DomainError("family has unbounded R1: " + family.description());
    const std::vector<double> grid = linear_grid(hi, points);
    if (hi == 0.0) {
        return union_frontier(family, std::span<const double>(grid.data(), 1));
    }
    return union_frontier(family, grid);
}

RegionFrontier polytope_frontier(const RatePolytope& p, std::span<const double> r1_grid) {
    RegionFrontier out;
    for (double r1 : r1_grid) {
        const auto v = p.max_r2(r1);
        if (!v) break;
        out.samples.push_back({r1, *v});
    }
    return out;
}

bool frontier_subset(const RegionFrontier& inner, const RegionFrontier& outer, double tol) {
    if (inner.empty()) return true;
    if (outer.empty()) return false;
    const double hi = outer.max_r1();
    for (const auto& s : inner.samples) {
        if (s.r1 > hi + tol) return false;
        const auto v = outer.r2_at(std::min(s.r1, hi));
        if (!v || s.r2 > *v + tol) return false;
    }
    return true;
}

FrontierComparison compare_frontiers(const Family& a, const Family& b, double tol, int points) {
    const double max_a = family_max_r1(a);
    const double max_b = family_max_r1(b);
    const double hi = std::max(max_a, max_b);
    std::vector<double> grid = linear_grid(hi, points);
    if (hi == 0.0) grid.resize(1);
    // Each frontier's own end point, so neither loses reach between grid samples.
    grid.push_back(std::min(max_a, max_b));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const RegionFrontier fa = union_frontier(a, grid);
    const RegionFrontier fb = union_frontier(b, grid);

    FrontierComparison out;
    out.a_in_b = frontier_subset(fa, fb, tol);
    out.b_in_a = frontier_subset(fb, fa, tol);
    auto excess = [](const RegionFrontier& x, const RegionFrontier& y, double* at) {
        double worst = -kInf;
        for (std::size_t i = 0; i < x.samples.size(); ++i) {
            const auto& s = x.samples[i];
            const double e = i < y.samples.size()
                                 ? s.r2 - y.samples[i].r2
                                 : std::max(s.r1 - y.max_r1(), s.r2 - y.samples.back().r2);
            if (e > worst) {
                worst = e;
                if (at) *at = s.r1;
            }
        }
        return worst;
    };
    out.max_excess_a = excess(fa, fb, nullptr);
    out.max_excess_b = excess(fb, fa, &out.r1_at_max_excess_b);
    return out;
}

double frontier_distance(const RegionFrontier& a, const RegionFrontier& b) {
    const std::size_t common = std::min(a.samples.size(), b.samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < common; ++i) {
        worst = std::max(worst, std::abs(a.samples[i].r2 - b.samples[i].r2));
    }
    for (std::size_t i = common; i < a.samples.size(); ++i) worst = std::max(worst, a.samples[i].r2);
    for (std::size_t i = common; i < b.samples.size(); ++i) worst = std::max(worst, b.samples[i].r2);
    return worst;
}

double max_sum_rate(const Family& family) {
    return family_max(
        family, [](const RatePolytope& p, const void*) { return p.max_sum(); }, nullptr);
}

double max_weighted_rate(const Family& family, double mu1, double mu2) {
    const std::pair<double, double> mu{mu1, mu2};
    return family_max(
        family,
        [](const RatePolytope& p, const void* ctx) {
            const auto* m = static_cast<const std::pair<double, double>*>(ctx);
            return p.max_weighted(m->first, m->second);
        },
        &mu);
}

double frontier_max_sum(const RegionFrontier& f) {
    double best = 0.0;
    for (const auto& s : f.samples) best = std::max(best, s.r1 + s.r2);
    return best;
}

RegionFrontier convexify(const RegionFrontier& f) {
    RegionFrontier out;
    out.meta = f.meta;
    if (f.samples.size() < 3) {
        out.samples = f.samples;
        return out;
    }
    // Upper hull by a monotone chain over ascending r1.
    std::vector<FrontierSample> hull;
    for (const auto& s : f.samples) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& m = hull[hull.size() - 1];
            const double cross = (m.r1 - o.r1) * (s.r2 - o.r2) - (m.r2 - o.r2) * (s.r1 - o.r1);
            if (cross >= 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(s);
    }
    RegionFrontier h;
    h.samples = hull;
    out.samples.reserve(f.samples.size());
    for (const auto& s : f.samples) {
        out.samples.push_back({s.r1, std::max(s.r2, h.r2_at(s.r1).value_or(s.r2))});
    }
    return out;
}

bool convexify_improves(const RegionFrontier& f, double tol) {
    const RegionFrontier c = convexify(f);
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        if (c.samples[i].r2 > f.samples[i].r2 + tol) return true;
    }
    return false;
}

std::string format_g9(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string frontier_to_csv(const RegionFrontier& f) {
    const std::string unit = info_unit_name();
    std::string out = "r1_" + unit + ",r2_" + unit + "\n";
    for (const auto& s : f.samples) {
        out += format_g9(s.r1);
        out += ',';
        out += format_g9(s.r2);
        out += '\n';
    }
    return out;
}

RegionFrontier frontier_from_csv(std::string_view text) {
    RegionFrontier out;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("r1_", 0) != 0) {
        throw InputError("frontier CSV must start with an r1_/r2_ header");
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw InputError("frontier CSV line " + std::to_string(lineno) + " has no comma");
        }
        try {
            const double r1 = std::stod(line.substr(0, comma));
            const double r2 = std::stod(line.substr(comma + 1));
            out.samples.push_back({r1, r2});
        } catch (const std::exception&) {
            throw InputError("frontier CSV line " + std::to_string(lineno) + " is not numeric");
        }
    }
    return out;
}

}  // namespace dbbound
