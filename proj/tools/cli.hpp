#pragma once

namespace lowdefect::cli {

// Exit codes: 0 success/pass, 1 verification failure, 2 usage or parse
// error, 3 resource or range error.  Diagnostics go to stderr, results to
// stdout; identical inputs produce byte-identical output.
int run(int argc, const char* const* argv);

}  // namespace lowdefect::cli
