#pragma once

#include <iosfwd>

namespace vga {

// Exit codes: 0 ok, 1 data violation or failed verification, 2 usage or
// parse error, 3 numerical or normalization failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vga
