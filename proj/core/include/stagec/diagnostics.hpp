#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace stagec {

struct Span {
  int line = 0;
  int col = 0;
};

enum class Phase {
  Parse,
  Typecheck,
  Lint,
  Eval,
  Internal,
};

const char* phase_name(Phase p);

// Exit codes reported by the command-line driver for each failure phase.
int phase_exit_code(Phase p);

struct Diagnostic {
  Phase phase = Phase::Internal;
  std::string code;     // stable machine-readable identifier, e.g. "StageError"
  std::string message;  // human-readable description
  Span span;
  std::optional<int> bound_level;  // populated for stage discipline errors
  std::optional<int> use_level;
};

std::string render_text(const Diagnostic& d);
std::string render_json(const Diagnostic& d);

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(Diagnostic d)
      : std::runtime_error(render_text(d)), diag(std::move(d)) {}

  Diagnostic diag;
};

[[noreturn]] void fail(Phase phase, std::string code, std::string message,
                       Span span = {});

[[noreturn]] void fail_stage(Phase phase, std::string code, std::string message,
                             Span span, int bound_level, int use_level);

}  // namespace stagec
