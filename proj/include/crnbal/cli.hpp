#ifndef CRNBAL_CLI_HPP
#define CRNBAL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace crnbal {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysisError = 1;
inline constexpr int kExitParseError = 2;

/// Entry point of the command-line tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crnbal

#endif  // CRNBAL_CLI_HPP
