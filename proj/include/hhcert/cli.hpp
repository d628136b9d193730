#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hhcert::cli {

// Runs one command-line invocation. `args` excludes the program name
// (subcommand first). Normal output goes to `out` unless --out redirects
// it to a file (written atomically: temp file, then rename); diagnostics
// go to `err`.
//
// Exit codes:
//   0  success
//   1  an inequality margin or a reproduction check failed
//   2  hypothesis rejection (strict evaluation rejected a theorem, or a
//      requested certification failed)
//   3  input error (bad flags, config, expression, or precondition)
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace hhcert::cli
