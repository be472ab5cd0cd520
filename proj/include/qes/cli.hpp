#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qes::cli {

inline const std::vector<std::string> kSubcommands{"certify", "born", "sweep", "oracle",
                                                   "invisibility", "fig1", "permittivity"};

/// Exit codes: 0 success, 1 the run completed but its check failed, 2 error.
int run_command(const std::string& subcommand, const std::filesystem::path& config,
                const std::filesystem::path& out_dir, int threads);

/// QES_TOL if set, else 1e-8.  Anything but a positive number throws.
double resolve_tolerance();

} // namespace qes::cli
