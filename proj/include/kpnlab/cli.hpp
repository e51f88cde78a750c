#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace kpnlab::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kTrue = 0, kFalsified = 1, kUsage = 2 };

struct Outcome {
  int code = kUsage;
  nlohmann::json report;
  /// Diagnostics for stderr (e.g. mismatching goldens).
  std::vector<std::string> messages;
};

/// Runs one invocation (argv without the program name). The report goes to
/// out as JSON, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs a subcommand and returns its report without printing. Throws
/// std::invalid_argument (usage) or std::domain_error on bad input.
Outcome execute(const std::vector<std::string>& args);

/// Report without timing and worker count, witnesses sorted.
nlohmann::json canonical(const nlohmann::json& report);

struct GoldenEntry {
  std::string name;
  std::vector<std::string> args;
};

/// Invocations recorded by `goldens record`.
const std::vector<GoldenEntry>& golden_suite();

/// Golden directory shipped with the sources (KPNLAB_GOLDENS overrides).
std::string default_golden_dir();

} // namespace kpnlab::cli
