#pragma once

#include <iosfwd>

namespace owlport {

// Entry point of the owlport command. Returns 0 on success, 1 on an
// operational error and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace owlport
