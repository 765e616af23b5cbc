#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace duelmap {

/// Entry point of the `duelmap` command line tool. `args` excludes the
/// program name. Exit codes: 0 success, 1 usage/IO, 2 scenario parse or
/// validation, 3 numerical/internal.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace duelmap
