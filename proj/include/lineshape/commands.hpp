// commands.hpp — profile / verify / evolve / sweep: build output files, then write them atomically

#pragma once

#include "lineshape/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lineshape {

enum class Command { profile, verify, evolve, sweep };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command c);

struct OutputFile {
    std::string name; // relative to the output directory
    std::string content;
};

struct CommandOutput {
    std::vector<OutputFile> files;
    bool checks_passed{true}; // verify only
};

/// profile.csv (omega_eV, dW_domega; unit area), peaks.json, and
/// plot_profile.py when cfg.emit_plot_script.
CommandOutput build_profile(const RunConfig& cfg);
/// verify.json: every check with value, threshold and passed.
CommandOutput build_verify(const RunConfig& cfg);
/// survival.csv (t, re, im, abs) on t_points times in [0, evolve_horizon].
CommandOutput build_evolve(const RunConfig& cfg);
/// sweep.csv, one row per cell.
CommandOutput build_sweep(const RunConfig& cfg, int threads = 0);

CommandOutput build_outputs(Command c, const RunConfig& cfg);

/// Writes every file under `dir` through a temporary directory and renames
/// them into place only once all have been written. Creates `dir`.
void write_outputs(const std::string& dir, const std::vector<OutputFile>& files);

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Builds and writes the outputs; maps errors to exit codes and reports
/// them on `err`. Nothing is written unless the build succeeds.
int run_command(Command c, const RunConfig& cfg, std::ostream& err);

} // namespace lineshape
