#ifndef HYPERLABEL_CLI_HPP
#define HYPERLABEL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlabel::cli {

/// Runs one subcommand (solve, label, dcn, degree, sperner, game).  `args`
/// excludes the program name.  Returns 0 on success, 2 on input errors and
/// 1 when the solver aborts.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlabel::cli

#endif  // HYPERLABEL_CLI_HPP
