#pragma once

#include <string>
#include <vector>

namespace stvss::cli {

/// Dispatches one command line (without argv[0]).
/// Exit codes: 0 success, 1 validation/check failure, 2 usage error.
int run(const std::vector<std::string>& args);

}  // namespace stvss::cli
