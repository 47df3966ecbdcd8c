#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace compute_verify::cli {

// Subcommands: bandwidth | limits | account | transcript {record,verify} |
// pow | locate. Exit codes: 0 analysis ran and came back compliant/clean,
// 2 violation or verification failure, 1 input or usage error. Machine
// output (--output json) is byte-stable for identical inputs: ordered keys,
// floats at 9 significant digits.

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace compute_verify::cli
