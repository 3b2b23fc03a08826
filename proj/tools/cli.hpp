#pragma once

#include <ostream>

namespace mobagent {

// Exit codes: 0 pass, 1 verdict fail, 2 usage or config error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mobagent
