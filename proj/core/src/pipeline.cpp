#include "stagec/pipeline.hpp"

#include <sstream>

#include "stagec/diagnostics.hpp"
#include "stagec/lint.hpp"
#include "stagec/parser.hpp"
#include "stagec/pretty.hpp"
#include "stagec/typecheck.hpp"

namespace stagec {

CompileOutput compile_source(const std::string& text) {
  SourceProgram src = parse_source(text);
  CheckResult checked = check_program(src);
  try {
    lint_program(checked.program);
  } catch (const CompileError& err) {
    fail(Phase::Internal, "InternalError",
         "elaborated program failed validation: " +
             std::string(err.diag.message));
  }
  return CompileOutput{std::move(src), std::move(checked.program),
                       std::move(checked.theory)};
}

std::optional<Expectation> parse_expectation(const std::string& text) {
  std::string first = text.substr(0, text.find('\n'));
  const std::string marker = "-- EXPECT:";
  size_t at = first.find(marker);
  if (at == std::string::npos) return std::nullopt;
  std::string rest = first.substr(at + marker.size());
  size_t begin = rest.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return std::nullopt;
  size_t end = rest.find_last_not_of(" \t\r");
  rest = rest.substr(begin, end - begin + 1);

  Expectation exp;
  if (rest == "accept") {
    exp.kind = Expectation::Kind::Accept;
    return exp;
  }
  std::istringstream in(rest);
  std::string word;
  in >> word;
  if (word == "reject") {
    exp.kind = Expectation::Kind::Reject;
    in >> exp.detail;
    if (exp.detail.empty()) return std::nullopt;
    return exp;
  }
  if (word == "runs-to") {
    exp.kind = Expectation::Kind::RunsTo;
    std::string value;
    std::getline(in, value);
    size_t vb = value.find_first_not_of(" \t");
    if (vb == std::string::npos) return std::nullopt;
    exp.detail = value.substr(vb);
    return exp;
  }
  return std::nullopt;
}

VerdictOutcome check_expectation(const std::string& text,
                                 const Expectation& exp) {
  VerdictOutcome out;
  switch (exp.kind) {
    case Expectation::Kind::Accept:
      out.expected = "accept";
      try {
        compile_source(text);
        out.actual = "accept";
      } catch (const CompileError& err) {
        out.actual = "reject " + err.diag.code;
      }
      break;
    case Expectation::Kind::Reject:
      out.expected = "reject " + exp.detail;
      try {
        compile_source(text);
        out.actual = "accept";
      } catch (const CompileError& err) {
        out.actual = "reject " + err.diag.code;
      }
      break;
    case Expectation::Kind::RunsTo:
      out.expected = "runs-to " + exp.detail;
      try {
        CompileOutput compiled = compile_source(text);
        RunResult result = run_program(compiled.program);
        out.actual = "runs-to " + pretty_value(result.value);
      } catch (const CompileError& err) {
        out.actual = "reject " + err.diag.code;
      }
      break;
  }
  out.matched = out.actual == out.expected;
  return out;
}

}  // namespace stagec
