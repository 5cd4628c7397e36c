#pragma once

namespace cavmag::cli {

// Parses arguments, runs the selected subcommand and maps failures onto the
// stable exit-code contract: 0 success, 2 configuration error, 3 data parse
// error, 4 numerical singularity, 5 fit did not converge.
int run(int argc, const char* const* argv);

}  // namespace cavmag::cli
