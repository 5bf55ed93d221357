#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "quivhom/cli/generate.hpp"
#include "quivhom/cli/instance.hpp"

namespace quivhom::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_parse = 2,
  exit_validation = 3,
  exit_incompatible = 4,
  exit_cross_check = 5,
};

struct CommandOptions {
  std::string file;
  std::string module_v;
  std::string module_w;
  bool json = false;
  bool verify = false;
  bool bases = false;
  std::size_t max_degree = 4;
  std::size_t margin = 0;
  std::uint64_t seed = 0;
};

struct CommandResult {
  Json report;
  int exit_code = exit_ok;
};

CommandResult cmd_ext(const Instance& inst, const CommandOptions& opts);
CommandResult cmd_check(const Instance& inst, const CommandOptions& opts);
CommandResult cmd_hyper(const Instance& inst, const CommandOptions& opts);

/// Human-readable rendering of a report: one "key: value" line per field,
/// nested objects indented. Carries exactly the numbers of the JSON form.
std::string render_text(const Json& report);

/// Full command line entry point. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace quivhom::cli
