// commands.hpp: subcommand dispatch behind the CLI

#pragma once

#include "chsqb/config.hpp"
#include "chsqb/csv.hpp"

#include <string>
#include <vector>

namespace chsqb {

const std::vector<std::string>& subcommands();

// evolve | sweep | scaling | ground | wigner | convergence
// Throws ConfigError for unsupported combinations, InvariantError when a
// numerical check fails.
CsvTable run(const std::string& subcommand, const RunConfig& cfg);

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitInvariant = 3 };

}  // namespace chsqb
