// Command-line front end. Exit codes: 0 success, 1 argument/validation
// error, 2 computation failure (resource limits, q_max saturation, failed
// verification suite).
#pragma once

#include <string>
#include <vector>

namespace d3::cli {

int run(const std::vector<std::string>& args);

}  // namespace d3::cli
