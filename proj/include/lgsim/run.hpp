#pragma once

#include "lgsim/ensemble.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace lgsim {

enum class Command { sweep, invasiveness, coin, ensemble, compare };
enum class CliEngine { separate, simultaneous, inrm, classical };
enum class OutputFormat { csv, svg, both };

/// Full description of one CLI invocation. Identical specs produce
/// byte-identical CSV output in exact mode (shots == 0).
struct RunSpec {
    Command command = Command::sweep;
    double theta_min = 0.0;
    double theta_max = 6.283185307179586;
    int points = 1000;
    CliEngine engine = CliEngine::separate;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::uint64_t> seed;  // only used when shots > 0
    std::uint64_t shots = 0;            // 0 selects the exact engine
    double theta = 0.5235987755982988;  // invasiveness demo angle
    int coin_steps = 3;
    ThermalParams thermal{};
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadSpec = 2;
inline constexpr int kExitIoError = 3;

/// Resolves `path` against the LGSIM_OUTPUT_DIR environment variable when
/// the path is relative and the variable is set.
std::string resolve_output_path(const std::string& path);

/// Executes the spec, writing output files and a short stdout summary.
/// Returns kExitOk, kExitBadSpec for invalid parameters, or kExitIoError
/// when an output file cannot be written.
int run(const RunSpec& spec);

}  // namespace lgsim
