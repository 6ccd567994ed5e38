#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace divforge::cli {

// One named consistency check executed while a command ran.
struct RunCheck {
  std::string name;
  bool passed = false;
};

// Envelope around every command's machine-readable output: what ran, a
// digest of the resolved inputs, the payload, the checks that guarded it,
// and the wall time.  Identical inputs produce identical reports except for
// `wall_seconds`.
struct RunReport {
  std::string command;
  std::string inputs_digest;  // "fnv1a64:<hex>" over the resolved inputs
  std::string outputs_json;   // payload, serialized JSON object
  std::vector<RunCheck> checks;
  double wall_seconds = 0.0;

  bool all_passed() const;
};

// Parses a report previously printed by `run` in JSON format, so that
// everything the tool emits can be read back programmatically.  Throws
// `precondition_error` on malformed or incomplete input.
RunReport report_from_json_text(const std::string& text);

// Executes one command-line invocation; `args` excludes the program name.
// Returns the process exit code: 0 on success, 1 when the input is
// rejected (bad flags, unknown subcommand, malformed or out-of-budget
// input), 2 when an internal consistency check fails.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace divforge::cli
