#pragma once

#include <limits>
#include <string>
#include <variant>

namespace dbbound {

// Feedback and cooperation noise variances may be +infinity ("link carries
// nothing"); that is the only non-finite value accepted anywhere.
inline constexpr double kInfiniteVariance = std::numeric_limits<double>::infinity();

enum class ModelKind { mac_nf, mac_uc, ic_uc };

const char* to_string(ModelKind kind);

// Gaussian MAC with noisy feedback:
//   Y = X1 + X2 + Z,  Y_F1 = Y + Z1,  Y_F2 = Y + Z2.
struct MacNfParams {
    double p1 = 1.0;
    double p2 = 1.0;
    double sigma_z2 = 1.0;    // receiver noise
    double sigma_z1_2 = 1.0;  // feedback noise at transmitter 1 (0 = noiseless)
    double sigma_z2_2 = 1.0;  // feedback noise at transmitter 2 (0 = noiseless)

    void validate() const;
};

// Gaussian MAC with common noisy feedback: Y_F1 = Y_F2 = Y + V.
struct MacNfCommonParams {
    double p1 = 1.0;
    double p2 = 1.0;
    double sigma_z2 = 1.0;
    double sigma_v2 = 1.0;

    void validate() const;
};

// Gaussian MAC with user cooperation:
//   Y = sqrt(h10) X1 + sqrt(h20) X2 + Z,
//   Y_F1 = sqrt(h21) X2 + Z1,  Y_F2 = sqrt(h12) X1 + Z2.
struct MacUcParams {
    double p1 = 1.0;
    double p2 = 1.0;
    double sigma_z2 = 1.0;
    double sigma_z1_2 = 1.0;
    double sigma_z2_2 = 1.0;
    double h10 = 1.0;
    double h20 = 1.0;
    double h12 = 1.0;
    double h21 = 1.0;

    void validate() const;
};

// Gaussian IC with user cooperation:
//   Y1 = X1 + sqrt(b) X2 + N1,  Y2 = sqrt(a) X1 + X2 + N2,
//   Y_F1 = sqrt(h21) X2 + Z1,   Y_F2 = sqrt(h12) X1 + Z2.
struct IcUcParams {
    double p1 = 1.0;
    double p2 = 1.0;
    double sigma_n1_2 = 1.0;
    double sigma_n2_2 = 1.0;
    double sigma_z1_2 = 1.0;
    double sigma_z2_2 = 1.0;
    double a = 1.0;
    double b = 1.0;
    double h12 = 1.0;
    double h21 = 1.0;

    void validate() const;
};

using ChannelParams = std::variant<MacNfParams, MacUcParams, IcUcParams>;

ModelKind model_kind(const ChannelParams& params);

namespace detail {
// Throws InvalidParams naming `field` unless value > 0 and finite.
void require_positive(double value, const char* field);
// Accepts value >= 0 (finite) or +inf.
void require_nonnegative_or_inf(double value, const char* field);
// Accepts value > 0 (finite) or +inf.
void require_positive_or_inf(double value, const char* field);
void require_nonnegative(double value, const char* field);
}  // namespace detail

}  // namespace dbbound
