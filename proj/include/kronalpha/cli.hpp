#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kronalpha/study.hpp"

namespace kronalpha {

struct CliError : std::runtime_error {
  int exit_code;
  explicit CliError(const std::string& message, int code = 1)
      : std::runtime_error(message), exit_code(code) {}
};

/// Parses command-line flags into a validated StudyConfig. Throws
/// CliError with a descriptive message (and the intended exit status)
/// on any invalid or missing field; exit_code 0 means --help was asked.
StudyConfig parse_config(int argc, const char* const* argv);

std::string cli_help_text();

}  // namespace kronalpha
