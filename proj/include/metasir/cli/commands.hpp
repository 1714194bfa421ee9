#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "metasir/cli/config.hpp"
#include "metasir/cli/table.hpp"

namespace metasir::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitIo = 3;

struct CommandResult
{
    Table table;
    /// Every setting the command resolved, the seed and the version.
    nlohmann::json manifest;
    /// kExitNumerical when a validation suite finds violations.
    int status = kExitOk;
};

const std::vector<std::string>& command_names();

/// Runs one command on a merged configuration. Throws library exceptions.
CommandResult execute(const std::string& command, const RunConfig& cfg);

/// Parses arguments (without the program name), runs the command, writes
/// the table and prints the manifest to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace metasir::cli
