#pragma once

#include <string>
#include <vector>

namespace srclda {

// Full command-line front end. Returns 0 on success, 1 on runtime failure,
// 2 on usage or validation errors.
int run_cli(std::vector<std::string> args);

}  // namespace srclda
