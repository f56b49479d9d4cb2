#pragma once
#include <iosfwd>

namespace superspin::cli {

// Runs one command line; JSON goes to out, diagnostics to err.
// Returns 0 on success, 1 on a domain violation, 2 on malformed input.
int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err);

} // namespace superspin::cli
