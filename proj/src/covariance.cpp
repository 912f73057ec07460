#include "dbbound/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dbbound/errors.hpp"
#include "dbbound/units.hpp"

namespace dbbound {

double delta(const CorrelationTriple& rho) {
    const double a = rho.rho1T;
    const double b = rho.rho2T;
    const double c = rho.rho12;
    return 1.0 - c * c - a * a - b * b + 2.0 * a * b * c;
}

double lambda_bound(double rho1T, double rho2T) {
    return std::sqrt(std::max(0.0, (1.0 - rho1T * rho1T) * (1.0 - rho2T * rho2T)));
}

void require_valid(const CorrelationTriple& rho) {
    for (double r : {rho.rho12, rho.rho1T, rho.rho2T}) {
        if (!(r >= -1.0 && r <= 1.0)) {
            throw InvalidCorrelation("correlation outside [-1, 1]: " + std::to_string(r));
        }
    }
    if (delta(rho) < -kDeltaTolerance) {
        throw InvalidCorrelation("correlation triple is not positive semi-definite (delta = " +
                                 std::to_string(delta(rho)) + ")");
    }
}

const char* to_string(Var v) {
    switch (v) {
        case Var::T:
            return "T";
        case Var::X1:
            return "X1";
        case Var::X2:
            return "X2";
        case Var::Y:
            return "Y";
        case Var::Y1:
            return "Y1";
        case Var::Y2:
            return "Y2";
        case Var::YF1:
            return "YF1";
        case Var::YF2:
            return "YF2";
    }
    return "?";
}

JointGaussianSystem::JointGaussianSystem(std::vector<Var> labels, Eigen::MatrixXd cov)
    : labels_(std::move(labels)), cov_(std::move(cov)) {
    const auto n = static_cast<Eigen::Index>(labels_.size());
    if (cov_.rows() != n || cov_.cols() != n) {
        throw std::invalid_argument("covariance shape does not match labels");
    }
}

std::size_t JointGaussianSystem::index(Var v) const {
    const auto it = std::find(labels_.begin(), labels_.end(), v);
    if (it == labels_.end()) {
        throw std::out_of_range(std::string("variable not in system: ") + to_string(v));
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

bool JointGaussianSystem::contains(Var v) const {
    return std::find(labels_.begin(), labels_.end(), v) != labels_.end();
}

double JointGaussianSystem::variance(Var v) const {
    const auto i = static_cast<Eigen::Index>(index(v));
    return cov_(i, i);
}

double JointGaussianSystem::covariance(Var a, Var b) const {
    return cov_(static_cast<Eigen::Index>(index(a)), static_cast<Eigen::Index>(index(b)));
}

double JointGaussianSystem::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool JointGaussianSystem::is_psd() const { return min_eigenvalue() >= -1e-10 * cov_.trace(); }

namespace {

void require_finite_variance(double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidParams(std::string(field) +
                            " must be finite and nonnegative to build a joint system");
    }
}

// Base vector u = (T, X1, X2, noise_0, ..., noise_{k-1}); every labelled
// variable is a row of `mix` applied to u.
JointGaussianSystem assemble(const CorrelationTriple& rho, double p1, double p2, double p_t,
                             const std::vector<double>& noise_vars, std::vector<Var> labels,
                             const Eigen::MatrixXd& mix) {
    const Eigen::Index k = 3 + static_cast<Eigen::Index>(noise_vars.size());
    Eigen::MatrixXd base = Eigen::MatrixXd::Zero(k, k);
    base(0, 0) = p_t;
    base(1, 1) = p1;
    base(2, 2) = p2;
    base(0, 1) = base(1, 0) = rho.rho1T * std::sqrt(p1 * p_t);
    base(0, 2) = base(2, 0) = rho.rho2T * std::sqrt(p2 * p_t);
    base(1, 2) = base(2, 1) = rho.rho12 * std::sqrt(p1 * p2);
    for (std::size_t i = 0; i < noise_vars.size(); ++i) {
        const auto j = static_cast<Eigen::Index>(3 + i);
        base(j, j) = noise_vars[i];
    }
    Eigen::MatrixXd cov = mix * base * mix.transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    return JointGaussianSystem(std::move(labels), std::move(cov));
}

JointGaussianSystem build_mac_nf(const MacNfParams& p, const CorrelationTriple& rho, double p_t) {
    p.validate();
    require_finite_variance(p.sigma_z1_2, "sz1");
    require_finite_variance(p.sigma_z2_2, "sz2");
    // u = (T, X1, X2, Z, Z1, Z2)
    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(6, 6);
    mix(0, 0) = 1.0;
    mix(1, 1) = 1.0;
    mix(2, 2) = 1.0;
    mix.row(3) << 0, 1, 1, 1, 0, 0;  // Y
    mix.row(4) << 0, 1, 1, 1, 1, 0;  // Y_F1 = Y + Z1
    mix.row(5) << 0, 1, 1, 1, 0, 1;  // Y_F2 = Y + Z2
    return assemble(rho, p.p1, p.p2, p_t, {p.sigma_z2, p.sigma_z1_2, p.sigma_z2_2},
                    {Var::T, Var::X1, Var::X2, Var::Y, Var::YF1, Var::YF2}, mix);
}

JointGaussianSystem build_mac_uc(const MacUcParams& p, const CorrelationTriple& rho, double p_t) {
    p.validate();
    require_finite_variance(p.sigma_z1_2, "sz1");
    require_finite_variance(p.sigma_z2_2, "sz2");
    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(6, 6);
    mix(0, 0) = 1.0;
    mix(1, 1) = 1.0;
    mix(2, 2) = 1.0;
    mix.row(3) << 0, std::sqrt(p.h10), std::sqrt(p.h20), 1, 0, 0;  // Y
    mix.row(4) << 0, 0, std::sqrt(p.h21), 0, 1, 0;                 // Y_F1
    mix.row(5) << 0, std::sqrt(p.h12), 0, 0, 0, 1;                 // Y_F2
    return assemble(rho, p.p1, p.p2, p_t, {p.sigma_z2, p.sigma_z1_2, p.sigma_z2_2},
                    {Var::T, Var::X1, Var::X2, Var::Y, Var::YF1, Var::YF2}, mix);
}

JointGaussianSystem build_ic_uc(const IcUcParams& p, const CorrelationTriple& rho, double p_t) {
    p.validate();
    require_finite_variance(p.sigma_z1_2, "sz1");
    require_finite_variance(p.sigma_z2_2, "sz2");
    // u = (T, X1, X2, N1, N2, Z1, Z2)
    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(7, 7);
    mix(0, 0) = 1.0;
    mix(1, 1) = 1.0;
    mix(2, 2) = 1.0;
    mix.row(3) << 0, 1, std::sqrt(p.b), 1, 0, 0, 0;    // Y1
    mix.row(4) << 0, std::sqrt(p.a), 1, 0, 1, 0, 0;    // Y2
    mix.row(5) << 0, 0, std::sqrt(p.h21), 0, 0, 1, 0;  // Y_F1
    mix.row(6) << 0, std::sqrt(p.h12), 0, 0, 0, 0, 1;  // Y_F2
    return assemble(rho, p.p1, p.p2, p_t, {p.sigma_n1_2, p.sigma_n2_2, p.sigma_z1_2, p.sigma_z2_2},
                    {Var::T, Var::X1, Var::X2, Var::Y1, Var::Y2, Var::YF1, Var::YF2}, mix);
}

Eigen::MatrixXd submatrix(const JointGaussianSystem& sys, std::span<const Var> rows,
                          std::span<const Var> cols) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                sys.covariance(rows[i], cols[j]);
        }
    }
    return out;
}

// log det of a conditional covariance; throws when it is numerically
// singular relative to the unconditional scale of the same block.
double logdet_conditional(const Eigen::MatrixXd& m, double scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (!(ev(i) > 1e-13 * scale) || !(ev(i) > 1e-300)) {
            throw SingularConditioning("conditional covariance is singular (eigenvalue " +
                                       std::to_string(ev(i)) + ")");
        }
        logdet += std::log(ev(i));
    }
    return logdet;
}

double block_scale(const JointGaussianSystem& sys, std::span<const Var> a) {
    double s = 0.0;
    for (Var v : a) s = std::max(s, sys.variance(v));
    return s;
}

}  // namespace

JointGaussianSystem build_joint_system(const ChannelParams& params, const CorrelationTriple& rho,
                                       double p_t) {
    require_valid(rho);
    if (!(p_t > 0.0) || !std::isfinite(p_t)) {
        throw InvalidParams("p_t must be positive and finite");
    }
    return std::visit(
        [&](const auto& p) -> JointGaussianSystem {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, MacNfParams>) {
                return build_mac_nf(p, rho, p_t);
            } else if constexpr (std::is_same_v<P, MacUcParams>) {
                return build_mac_uc(p, rho, p_t);
            } else {
                return build_ic_uc(p, rho, p_t);
            }
        },
        params);
}

Eigen::MatrixXd conditional_covariance(const JointGaussianSystem& sys, std::span<const Var> a,
                                       std::span<const Var> c) {
    Eigen::MatrixXd saa = submatrix(sys, a, a);
    if (c.empty()) return saa;
    const Eigen::MatrixXd sac = submatrix(sys, a, c);
    const Eigen::MatrixXd scc = submatrix(sys, c, c);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scc);
    const auto& ev = solver.eigenvalues();
    const double cutoff = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::VectorXd inv(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        inv(i) = ev(i) > cutoff ? 1.0 / ev(i) : 0.0;
    }
    const Eigen::MatrixXd proj = sac * solver.eigenvectors();
    Eigen::MatrixXd out = saa - proj * inv.asDiagonal() * proj.transpose();
    return 0.5 * (out + out.transpose());
}

double gaussian_cmi(const JointGaussianSystem& sys, std::span<const Var> a, std::span<const Var> b,
                    std::span<const Var> c) {
    std::vector<Var> bc(b.begin(), b.end());
    bc.insert(bc.end(), c.begin(), c.end());
    const double scale = block_scale(sys, a);
    const double ld_c = logdet_conditional(conditional_covariance(sys, a, c), scale);
    const double ld_bc = logdet_conditional(conditional_covariance(sys, a, bc), scale);
    const double value = from_nats(0.5 * (ld_c - ld_bc));
    if (value < 0.0) {
        if (value > -1e-9) return 0.0;
        throw NegativeInformation("conditional mutual information is negative: " +
                                  std::to_string(value));
    }
    return value;
}

double gaussian_cmi(const JointGaussianSystem& sys, std::initializer_list<Var> a,
                    std::initializer_list<Var> b, std::initializer_list<Var> c) {
    return gaussian_cmi(sys, std::span<const Var>(a.begin(), a.size()),
                        std::span<const Var>(b.begin(), b.size()),
                        std::span<const Var>(c.begin(), c.size()));
}

double gaussian_entropy_nats(const JointGaussianSystem& sys, std::initializer_list<Var> a,
                             std::initializer_list<Var> c) {
    const std::span<const Var> as(a.begin(), a.size());
    const std::span<const Var> cs(c.begin(), c.size());
    const double ld = logdet_conditional(conditional_covariance(sys, as, cs), block_scale(sys, as));
    const double k = static_cast<double>(a.size());
    return 0.5 * (k * std::log(2.0 * std::numbers::pi * std::numbers::e) + ld);
}

}  // namespace dbbound
