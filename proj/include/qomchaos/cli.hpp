// Command-line front end: simulate / mle / bifurcation / validate / plot.
//
// Exit codes: 0 success (for `mle`: chaotic); 1 configuration or usage error;
// 2 numerical failure (divergence or stiffness where boundedness is
// required); 3 validate-check failure; 4 `mle` ran cleanly but the orbit is
// not chaotic.
#pragma once

#include <string>
#include <vector>

namespace qomchaos {

// args excludes the program name. Catches errors and maps them to exit codes.
int run_cli(const std::vector<std::string>& args);

}  // namespace qomchaos
