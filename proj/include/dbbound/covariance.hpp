#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dbbound/params.hpp"

namespace dbbound {

// Correlations of the input covariance matrix Q of (X1, X2, T).
struct CorrelationTriple {
    double rho12 = 0.0;
    double rho1T = 0.0;
    double rho2T = 0.0;
};

// Determinant of Q divided by P1 P2 P_T:
//   1 - rho12^2 - rho1T^2 - rho2T^2 + 2 rho1T rho2T rho12.
double delta(const CorrelationTriple& rho);

// Half-width of the admissible rho12 interval around rho1T * rho2T.
double lambda_bound(double rho1T, double rho2T);

// Throws InvalidCorrelation when a component leaves [-1, 1] or
// delta(rho) < -1e-12.
void require_valid(const CorrelationTriple& rho);

inline constexpr double kDeltaTolerance = 1e-12;

// Random variables that can appear in a joint system.
enum class Var { T, X1, X2, Y, Y1, Y2, YF1, YF2 };

const char* to_string(Var v);

// Joint second-moment matrix of (T, X1, X2, channel outputs).
class JointGaussianSystem {
   public:
    JointGaussianSystem(std::vector<Var> labels, Eigen::MatrixXd cov);

    std::size_t dimension() const { return labels_.size(); }
    const std::vector<Var>& labels() const { return labels_; }
    const Eigen::MatrixXd& cov() const { return cov_; }

    // Position of `v` in labels(); throws std::out_of_range if absent.
    std::size_t index(Var v) const;
    bool contains(Var v) const;

    double variance(Var v) const;
    double covariance(Var a, Var b) const;

    double min_eigenvalue() const;
    // Smallest eigenvalue >= -1e-10 * trace.
    bool is_psd() const;

   private:
    std::vector<Var> labels_;
    Eigen::MatrixXd cov_;
};

// Assembles the covariance implied by the model equations with
// Var(X1) = P1, Var(X2) = P2, Var(T) = p_t and cross terms from rho.
// Noise variances must be finite here; infinite links are a closed-form
// concept only.
JointGaussianSystem build_joint_system(const ChannelParams& params, const CorrelationTriple& rho,
                                       double p_t = 1.0);

// Covariance of `a` given `c` (Schur complement; pseudo-inverse on the
// conditioning block so deterministic relations are handled exactly).
Eigen::MatrixXd conditional_covariance(const JointGaussianSystem& sys, std::span<const Var> a,
                                       std::span<const Var> c);

// I(A; B | C) = 1/2 log(det S_{A|C} / det S_{A|B,C}) in the active unit.
// Values in (-1e-9, 0) are clamped to 0; more negative values throw
// NegativeInformation. SingularConditioning if a determinant underflows.
double gaussian_cmi(const JointGaussianSystem& sys, std::span<const Var> a, std::span<const Var> b,
                    std::span<const Var> c);
double gaussian_cmi(const JointGaussianSystem& sys, std::initializer_list<Var> a,
                    std::initializer_list<Var> b, std::initializer_list<Var> c = {});

// Differential entropy h(A | C) in nats.
double gaussian_entropy_nats(const JointGaussianSystem& sys, std::initializer_list<Var> a,
                             std::initializer_list<Var> c = {});

}  // namespace dbbound
