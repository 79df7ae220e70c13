#pragma once

#include <iosfwd>

namespace ssspx::cli {

// Entry point of the `ssspx` tool. Exit codes: 0 ok, 1 verification
// mismatch, 2 bad input (parse error, source out of range, infeasible spec),
// 3 debug invariant violation.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ssspx::cli
