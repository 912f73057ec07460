#pragma once

#include <map>
#include <ostream>
#include <string>

#include "dbbound/grid.hpp"
#include "dbbound/regions.hpp"

namespace dbbound {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitInvalidConfig = 2,
    kExitNumericFailure = 3,
};

// One fully resolved region request.
struct RunConfig {
    std::string model;  // mac-nf, mac-nf-common, mac-uc, ic-uc
    std::string bound;  // db, cutset, nofb, nocoop, ozarow, totalcoop
    std::map<std::string, double> params;
    GridSpec grid;
    bool full_sweep = false;
};

// Builds a RunConfig from flat keys (config-file names: model, bound, p1,
// ..., grid, fine-step, rho-range, r1-points, full-sweep). Unknown keys and
// parameters that do not belong to the model are InputErrors naming the key.
RunConfig make_run_config(const std::map<std::string, std::string>& kv);

Family make_family(const RunConfig& cfg);

// Entry point of the `dbbound` executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dbbound
