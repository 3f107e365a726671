#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tsdcm/output.hpp"

namespace tsdcm {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitConfigError = 2,
    kExitRuntimeError = 3,
};

/// Main ensemble plus its summary, theorem report and alpha sweep.
RunOutputs run_simulate(const RunConfig& cfg, const EnsembleOptions& options);
RunOutputs run_sweep(const RunConfig& cfg, const EnsembleOptions& options);
/// Proposition diagnostics over horizons 5, 10, 20, 50 plus the theorem
/// report at the configured horizon.
RunOutputs run_verify(const RunConfig& cfg, const EnsembleOptions& options);

/// True when every asserted invariant held.
bool verify_passed(const RunOutputs& outputs);

/// `args` excludes the program name.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsdcm
