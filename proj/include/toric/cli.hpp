#pragma once

#include <string>
#include <vector>

namespace toric::cli {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Exit codes: 0 success (verdicts are report content), 1 a mathematical
// precondition of the command does not hold, 2 malformed input or usage.
constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kInputError = 2;

// args excludes the program name, e.g. {"gbeta", "--input", "a1.json", "--json"}.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace toric::cli
