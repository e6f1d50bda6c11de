#pragma once

#include <ostream>

namespace probgen::cli {

/// Entry point of the `probgen` tool. Returns 0 on success, 1 on input or
/// usage errors and 2 on internal errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace probgen::cli
