#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dbbound {

// w1 * R1 + w2 * R2 <= c.
struct RateConstraint {
    double w1 = 0.0;
    double w2 = 0.0;
    double c = 0.0;
};

// Intersection of a few half-planes with the nonnegative quadrant. Weights
// are restricted to (1,0), (0,1) and (1,1).
class RatePolytope {
   public:
    static constexpr std::size_t kCapacity = 8;

    RatePolytope() = default;

    // R1 <= r1, R2 <= r2, R1 + R2 <= sum.
    static RatePolytope pentagon(double r1, double r2, double sum);

    // Throws DomainError for other weights, c < 0, or a full polytope.
    RatePolytope& add(double w1, double w2, double c);
    RatePolytope& add_r1(double c) { return add(1.0, 0.0, c); }
    RatePolytope& add_r2(double c) { return add(0.0, 1.0, c); }
    RatePolytope& add_sum(double c) { return add(1.0, 1.0, c); }

    std::span<const RateConstraint> constraints() const { return {items_.data(), size_}; }
    std::size_t size() const { return size_; }

    // Largest feasible R1 (with R2 = 0); +inf when unconstrained.
    double max_r1() const;
    // Largest feasible R2 at the given R1, or nullopt if R1 is infeasible.
    std::optional<double> max_r2(double r1) const;
    // Largest R1 + R2 over the polytope.
    double max_sum() const;
    // max mu1 R1 + mu2 R2 with mu1, mu2 >= 0.
    double max_weighted(double mu1, double mu2) const;
    bool contains(double r1, double r2, double tol = 0.0) const;

    // Tightest bound of each weight class; +inf if absent.
    double r1_cap() const { return r1_cap_; }
    double r2_cap() const { return r2_cap_; }
    double sum_cap() const { return sum_cap_; }

   private:
    std::array<RateConstraint, kCapacity> items_{};
    std::size_t size_ = 0;
    double r1_cap_ = kUnbounded;
    double r2_cap_ = kUnbounded;
    double sum_cap_ = kUnbounded;

    static constexpr double kUnbounded = std::numeric_limits<double>::infinity();
};

std::optional<double> polytope_max_r2(const RatePolytope& p, double r1);

// A lazily generated union of polytopes split into independent blocks.
// Blocks may be generated concurrently; each call of `generate` must emit
// the same polytopes for the same block index.
class Family {
   public:
    using Emit = std::function<void(const RatePolytope&)>;
    using Generator = std::function<void(std::size_t block, const Emit& emit)>;

    Family(std::string description, std::size_t blocks, Generator generate);
    static Family single(std::string description, const RatePolytope& p);

    const std::string& description() const { return description_; }
    std::size_t blocks() const { return blocks_; }
    void generate(std::size_t block, const Emit& emit) const { generate_(block, emit); }

    // Sequentially visits every polytope in block order.
    void for_each(const Emit& emit) const;

   private:
    std::string description_;
    std::size_t blocks_;
    Generator generate_;
};

struct FrontierSample {
    double r1 = 0.0;
    double r2 = 0.0;
};

struct RegionFrontier {
    std::vector<FrontierSample> samples;
    std::string meta;

    bool empty() const { return samples.empty(); }
    double max_r1() const { return samples.empty() ? 0.0 : samples.back().r1; }
    // Linear interpolation; nullopt past the last sample or below 0.
    std::optional<double> r2_at(double r1) const;
};

// Max R1 over the family. Throws EmptyFamily if nothing is emitted.
double family_max_r1(const Family& family);

// Pointwise max of the per-polytope profiles on `r1_grid` (ascending,
// nonnegative). Trailing infeasible points are dropped and a right-to-left
// running max enforces a nonincreasing R2. Throws EmptyFamily.
RegionFrontier union_frontier(const Family& family, std::span<const double> r1_grid);
// Uses `points` evenly spaced samples on [0, family_max_r1].
RegionFrontier union_frontier(const Family& family, int points = 401);

// Profile of one polytope on a grid.
RegionFrontier polytope_frontier(const RatePolytope& p, std::span<const double> r1_grid);

// True iff every inner sample lies under the outer frontier (plus tol).
bool frontier_subset(const RegionFrontier& inner, const RegionFrontier& outer, double tol);

struct FrontierComparison {
    bool a_in_b = false;
    bool b_in_a = false;
    // max over samples of (r2_a - r2_b); positive where A pokes out of B.
    double max_excess_a = 0.0;
    // max over samples of (r2_b - r2_a).
    double max_excess_b = 0.0;
    double r1_at_max_excess_b = 0.0;
};

// Builds both frontiers on one R1 grid covering both families (plus the
// smaller end point) and tests inclusion each way. A sample past the other
// frontier's reach counts as max(r1 - reach, r2 - r2 at reach).
FrontierComparison compare_frontiers(const Family& a, const Family& b, double tol, int points = 401);

// Both frontiers must share an R1 grid. sup |r2_a - r2_b| over common
// samples; a sample present in only one contributes its own r2.
double frontier_distance(const RegionFrontier& a, const RegionFrontier& b);

double max_sum_rate(const Family& family);
double max_weighted_rate(const Family& family, double mu1, double mu2);
// max over samples of r1 + r2.
double frontier_max_sum(const RegionFrontier& f);

// Upper concave envelope of the samples (same R1 grid).
RegionFrontier convexify(const RegionFrontier& f);
// True if the envelope exceeds the frontier somewhere by more than tol.
bool convexify_improves(const RegionFrontier& f, double tol = 1e-9);

// CSV with header "r1_<unit>,r2_<unit>" and 9 significant digits.
std::string frontier_to_csv(const RegionFrontier& f);
RegionFrontier frontier_from_csv(std::string_view text);

std::string format_g9(double v);

}  // namespace dbbound
