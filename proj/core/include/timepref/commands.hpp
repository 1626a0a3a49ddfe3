#pragma once

#include "timepref/scenario.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace timepref::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;      // parse error / schema violation
inline constexpr int kExitSemantic = 3;   // semantic validation failure
inline constexpr int kExitTrajectory = 4; // unknown trajectory token
inline constexpr int kExitPlannerCap = 5; // planner cap exceeded

struct CommandOptions {
    int digits = 3;
    std::string format = "table"; // "table" | "csv"

    std::string trajectory;               // value
    std::optional<int> horizon;           // plan/simulate/sweep override
    bool naive = false;                   // plan scoring
    std::string mode = "historical";      // simulate
    int steps = 100;                      // simulate/sweep; long enough for the
                                          // slowest run to expose its cycle
    std::optional<Real> eta;              // simulate override
    std::vector<Real> eta_values = {0.0, 0.3, 0.5, 0.9, 0.95, 0.98, 1.0}; // sweep-eta
    Real gamma1 = 0.0, gamma2 = 0.0;      // impossibility
};

/// Executes one CLI command against a loaded scenario (impossibility runs
/// without one). Data goes to `out`, diagnostics and metadata to `err`; the
/// return value is the process exit code. Output is byte-deterministic for
/// fixed inputs.
int run_command(const std::string& command, const CompiledScenario* scenario,
                const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Loads the scenario (when the command needs one) and dispatches; maps the
/// typed exceptions onto exit codes and prints them to `err`.
int run_cli(const std::string& command, const std::string& scenario_path,
            const CommandOptions& options, std::ostream& out, std::ostream& err);

} // namespace timepref::cli
