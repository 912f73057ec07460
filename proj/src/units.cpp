#include "dbbound/units.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace dbbound {

namespace {
std::atomic<InfoUnit> g_unit{InfoUnit::bits};
}  // namespace

void set_info_unit(InfoUnit unit) { g_unit.store(unit, std::memory_order_relaxed); }

InfoUnit info_unit() { return g_unit.load(std::memory_order_relaxed); }

const char* info_unit_name() { return info_unit() == InfoUnit::bits ? "bits" : "nats"; }

double from_nats(double nats) {
    return info_unit() == InfoUnit::bits ? nats / std::numbers::ln2 : nats;
}

double half_log1p(double snr) { return from_nats(0.5 * std::log1p(snr)); }

}  // namespace dbbound
