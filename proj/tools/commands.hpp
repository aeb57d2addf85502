#pragma once

#include "residuum/dsl.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace residuum::cli {

struct CommandOptions {
  unsigned precision = kDefaultPrecisionBits;
  double box = 50;
  /// Relative tolerance of the verify comparison.
  double tol = 1e-6;
};

enum ExitCode : int { kOk = 0, kNotCertified = 1, kInputError = 2 };

struct Report {
  nlohmann::json data;  // always carries "schema" and "command"
  std::string text;
  int exit_code = kOk;
};

Report analyze(const Problem& p, const CommandOptions& o);
Report eval(const Problem& p, const CommandOptions& o);
Report verify(const Problem& p, const CommandOptions& o);
Report grouping(const Problem& p, const CommandOptions& o);

/// Parses source and runs command at the requested precision. Library errors
/// become reports with an "error" section.
Report run(std::string_view command, std::string_view source, const CommandOptions& o);

}  // namespace residuum::cli
