#pragma once

#include <string>
#include <vector>

namespace ptbloch::cli {

/// Dispatches the subcommands (enclose | eigs | verify | bands | homotopy).
/// Returns the process exit code: 0 on success, 2 when verify finds a failing
/// check, 1 on configuration/IO/numeric errors.
int run(const std::vector<std::string>& args);

}  // namespace ptbloch::cli
