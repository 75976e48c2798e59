#include "stagec/diagnostics.hpp"

#include <json.hpp>

namespace stagec {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Parse:
      return "parse";
    case Phase::Typecheck:
      return "typecheck";
    case Phase::Lint:
      return "lint";
    case Phase::Eval:
      return "eval";
    case Phase::Internal:
      return "internal";
  }
  return "internal";
}

int phase_exit_code(Phase p) {
  switch (p) {
    case Phase::Parse:
      return 2;
    case Phase::Typecheck:
    case Phase::Lint:
      return 1;
    case Phase::Eval:
      return 3;
    case Phase::Internal:
      return 4;
  }
  return 4;
}

std::string render_text(const Diagnostic& d) {
  std::string out = std::string(phase_name(d.phase)) + " error";
  if (d.span.line > 0) {
    out += " at " + std::to_string(d.span.line) + ":" + std::to_string(d.span.col);
  }
  out += " [" + d.code + "]: " + d.message;
  return out;
}

std::string render_json(const Diagnostic& d) {
  nlohmann::json j;
  j["phase"] = phase_name(d.phase);
  j["code"] = d.code;
  j["message"] = d.message;
  j["span"] = {{"line", d.span.line}, {"col", d.span.col}};
  if (d.bound_level) j["boundLevel"] = *d.bound_level;
  if (d.use_level) j["useLevel"] = *d.use_level;
  return j.dump();
}

void fail(Phase phase, std::string code, std::string message, Span span) {
  Diagnostic d;
  d.phase = phase;
  d.code = std::move(code);
  d.message = std::move(message);
  d.span = span;
  throw CompileError(std::move(d));
}

void fail_stage(Phase phase, std::string code, std::string message, Span span,
                int bound_level, int use_level) {
  Diagnostic d;
  d.phase = phase;
  d.code = std::move(code);
  d.message = std::move(message);
  d.span = span;
  d.bound_level = bound_level;
  d.use_level = use_level;
  throw CompileError(std::move(d));
}

}  // namespace stagec
