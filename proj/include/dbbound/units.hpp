#pragma once

namespace dbbound {

enum class InfoUnit { bits, nats };

// Process-wide unit for every information quantity (rates, CMI values).
// Defaults to bits; nats is a debugging aid.
void set_info_unit(InfoUnit unit);
InfoUnit info_unit();
const char* info_unit_name();

// Converts a natural-log quantity into the active unit.
double from_nats(double nats);

// 1/2 log(1 + snr) in the active unit, computed with log1p.
double half_log1p(double snr);

}  // namespace dbbound
