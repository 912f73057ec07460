#include "dbbound/params.hpp"

#include <cmath>

#include "dbbound/errors.hpp"

namespace dbbound {

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::mac_nf:
            return "mac-nf";
        case ModelKind::mac_uc:
            return "mac-uc";
        case ModelKind::ic_uc:
            return "ic-uc";
    }
    return "unknown";
}

namespace detail {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidParams(std::string(field) + " must be positive and finite");
    }
}

void require_nonnegative(double value, const char* field) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw InvalidParams(std::string(field) + " must be nonnegative and finite");
    }
}

void require_nonnegative_or_inf(double value, const char* field) {
    if (!(value >= 0.0)) {
        throw InvalidParams(std::string(field) + " must be nonnegative (or inf)");
    }
}

void require_positive_or_inf(double value, const char* field) {
    if (!(value > 0.0)) {
        throw InvalidParams(std::string(field) + " must be positive (or inf)");
    }
}

}  // namespace detail

void MacNfParams::validate() const {
    detail::require_positive(p1, "p1");
    detail::require_positive(p2, "p2");
    detail::require_positive(sigma_z2, "sz");
    detail::require_nonnegative_or_inf(sigma_z1_2, "sz1");
    detail::require_nonnegative_or_inf(sigma_z2_2, "sz2");
}

void MacNfCommonParams::validate() const {
    detail::require_positive(p1, "p1");
    detail::require_positive(p2, "p2");
    detail::require_positive(sigma_z2, "sz");
    detail::require_nonnegative_or_inf(sigma_v2, "sv");
}

void MacUcParams::validate() const {
    detail::require_positive(p1, "p1");
    detail::require_positive(p2, "p2");
    detail::require_positive(sigma_z2, "sz");
    detail::require_positive_or_inf(sigma_z1_2, "sz1");
    detail::require_positive_or_inf(sigma_z2_2, "sz2");
    detail::require_nonnegative(h10, "h10");
    detail::require_nonnegative(h20, "h20");
    detail::require_nonnegative(h12, "h12");
    detail::require_nonnegative(h21, "h21");
}

void IcUcParams::validate() const {
    detail::require_positive(p1, "p1");
    detail::require_positive(p2, "p2");
    detail::require_positive(sigma_n1_2, "sn1");
    detail::require_positive(sigma_n2_2, "sn2");
    detail::require_positive_or_inf(sigma_z1_2, "sz1");
    detail::require_positive_or_inf(sigma_z2_2, "sz2");
    detail::require_nonnegative(a, "a");
    detail::require_nonnegative(b, "b");
    detail::require_nonnegative(h12, "h12");
    detail::require_nonnegative(h21, "h21");
}

ModelKind model_kind(const ChannelParams& params) {
    switch (params.index()) {
        case 0:
            return ModelKind::mac_nf;
        case 1:
            return ModelKind::mac_uc;
        default:
            return ModelKind::ic_uc;
    }
}

}  // namespace dbbound
