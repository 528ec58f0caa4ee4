#pragma once

#include "sprd/config.hpp"

#include <iosfwd>
#include <optional>
#include <string_view>

namespace sprd {

enum class Command { Solve, Expand, Verify, Sweep, OracleCheck };

std::optional<Command> command_from_name(std::string_view name);

/// Executes one batch command, writing its artifacts under
/// config.output_dir. Returns 0 on success and 1 when a requested check
/// failed; configuration problems throw before any artifact is written.
int run_command(Command command, const RunConfig& config, std::ostream& log);

} // namespace sprd
