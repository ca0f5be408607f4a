#pragma once

#include <iosfwd>

namespace altserve {

// Command-line front end; argv follows main() conventions and the streams
// are injectable so tests can capture output. Returns the process exit
// code: 0 on success, 2 when the spec or the usage is invalid, 3 when a
// solver or simulation diagnostic fires, 1 for anything else.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace altserve
