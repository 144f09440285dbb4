#pragma once

#include <ostream>

namespace hexslide {

// Entry point of the hexslide tool. Exit codes: 0 success, 1 failed check
// or IO error, 2 bad flags or input, 3 budget exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hexslide
