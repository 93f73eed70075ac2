#pragma once

#include <string>
#include <vector>

namespace evset {

// Exit codes: 0 success, 1 usage/runtime error, 2 non-vacuous bound failure.
int run_cli(const std::vector<std::string>& args);

} // namespace evset
