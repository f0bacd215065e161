#pragma once

#include <iosfwd>

namespace dmsa::cli {

// Exit codes: 0 ok, 1 usage, 2 data error, 3 external aligner failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dmsa::cli
