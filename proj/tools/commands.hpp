#pragma once

#include <string>
#include <vector>

namespace hyperfact::cli {

// Runs one CLI invocation (no program name in args). Exit codes: 0 success,
// 1 operational or verification failure, 2 usage error.
int run(const std::vector<std::string>& args);

}  // namespace hyperfact::cli
