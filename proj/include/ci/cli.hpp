// Command-line driver: subcommands {certify, eigen, varieties, birres,
// torelli, exceptions, all}, each producing a Report written as text or
// line-delimited JSON. run_cli is the testable entry point (argv without
// the program name); the exit status reflects only failed records.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ci {

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ci
