#pragma once

#include <atomic>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sagbisat/ring.hpp"

namespace sagbisat {

/// A parsed problem file:
///
///   field QQ;                      # or ZZ/101
///   vars a0..a3;                   # or vars a0, a1, a2, a3
///   weights [[0,1,2,3],[1,1,1,1]];
///   order a0degrev;                # degrevlex | a0degrev | matrix [[..],..]
///   let g2 = a1^2 - a0*a2;
///   run saturate g=a0;
///
/// Everything after `#` on a line is ignored.
struct ProblemFile {
  Field field = Field::rationals();
  std::vector<std::string> vars;
  std::optional<Grading> weights;
  std::string order = "degrevlex";
  /// Null when no variables are declared (allowed for `run uinv`).
  RingPtr ring;
  std::vector<std::pair<std::string, Polynomial>> bindings;
  std::string command;
  /// key=value arguments of the run statement, values as written.
  std::vector<std::pair<std::string, std::string>> args;
  /// Position of each argument value, for diagnostics.
  std::vector<std::pair<int, int>> arg_positions;
};

/// Throws ParseError (with line:column) and UndeclaredVariable.
ProblemFile parse_problem(std::string_view text);

extern const std::vector<std::string> kCommands;

struct RunFlags {
  /// Overrides the command of the file when non-empty.
  std::string command;
  unsigned max_iterations = 20;
  bool json = false;
  bool verbose = false;
  bool stats = false;
  /// key=value overrides of the run arguments (degree, n, g, f).
  std::vector<std::pair<std::string, std::string>> args;
  std::ostream* progress = nullptr;
  const std::atomic<bool>* cancel = nullptr;
};

struct RunOutput {
  /// 0 finished, 2 iteration limit, 1 error.
  int exit_code = 0;
  std::string text;
};

/// Runs the command on the file's bindings. Errors are reported in the
/// output with exit code 1, never thrown.
RunOutput run_command(const ProblemFile& p, const RunFlags& flags);

}  // namespace sagbisat
