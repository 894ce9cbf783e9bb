#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tqet/config.hpp"

namespace tqet {

/// Writes ground.csv: ground-state energy, spectral gap, degeneracy flag.
void cmd_ground(const RunConfig& config);

/// Writes trace.csv (t, M, N, theta_star, dE_min, E_NTE, E_TQET_opt) and
/// summary.csv (E_QET, E_input, eta_tqet, eta_qet).
void cmd_trace(const RunConfig& config);

/// Writes timelike.csv (spacetime second-moment series for both initial
/// states) and, unless enable_sync=false, sync.csv pairing extraction
/// windows with diagnostic critical points.
void cmd_timelike(const RunConfig& config);

/// Runs one sweep ("gh", "ece", "ratio", "fixed") or, with an empty
/// `which`, every sweep enabled in the config. One file per sweep.
void cmd_sweep(const RunConfig& config, const std::string& which);

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// The nine-property invariant suite, run at N = 4 and N = 6; each check
/// reports its worst residual over both sizes. `inject_fault` names a
/// check whose residual is corrupted, for testing the harness itself.
std::vector<CheckResult> run_validation(const std::string& inject_fault = "");

/// Prints per-check PASS/FAIL lines; returns 0 iff all checks pass.
int cmd_validate(const RunConfig& config, const std::string& inject_fault,
                 std::ostream& out);

/// Full front end: subcommand dispatch, config layering, exit-code
/// mapping (0 ok, 1 validation/config, 2 numerical consistency, 3 I/O).
int run_cli(int argc, const char* const* argv);

}  // namespace tqet
