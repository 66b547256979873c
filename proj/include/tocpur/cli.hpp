#pragma once

#include <iosfwd>

namespace tocpur {

/// Entry point of the `tocpur` command. Returns the process exit status:
/// 0 on success, 1 on bad input files or solver errors, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tocpur
