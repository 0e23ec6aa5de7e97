#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace morlab::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kConfigError = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Line-oriented "key = value" file. '#' starts a comment; blank lines are
// skipped. Keys are option names without the leading dashes, except
// "command", which names the subcommand.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path);

// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morlab::cli
