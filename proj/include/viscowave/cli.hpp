#pragma once

#include <string>
#include <vector>

/// Command front ends shared by the binary and the test suites. Each command
/// returns a process exit status:
///   0  success
///   2  configuration error
///   3  solver failure
///   4  verification failure
namespace viscowave {
namespace cli {

inline constexpr const char* version_token = "viscowave 0.1.0";

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_solver_failure = 3;
inline constexpr int exit_verification_failure = 4;

/// Solve one trajectory; writes trajectory.csv, energy.csv and manifest.txt
/// into out_dir. Re-running with an identical manifest reproduces identical
/// bytes.
int cmd_solve(const std::string& config_path,
              const std::vector<std::string>& overrides,
              const std::string& out_dir);

/// Run an eps (x r) continuation sweep; writes sweep.csv, summary.txt and a
/// subdirectory per run. Per-run failures are recorded in sweep.csv; the
/// command fails only when no run succeeds.
int cmd_sweep(const std::string& config_path,
              const std::vector<std::string>& overrides,
              const std::vector<double>& eps_list,
              const std::vector<double>& r_list, const std::string& out_dir);

/// Run the invariant suite for a preset and print a pass/fail table.
int cmd_verify(const std::string& preset_name,
               const std::vector<std::string>& overrides);

} // namespace cli
} // namespace viscowave
