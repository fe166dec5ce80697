#pragma once

#include <ostream>

namespace mixent {

/// Command-line entry point. Subcommands: estimate, sweep, mi.
/// Returns 0 on success, 2 on usage errors, 1 on computation errors.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace mixent
