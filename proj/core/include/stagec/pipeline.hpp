#pragma once

#include <optional>
#include <string>

#include "stagec/ast.hpp"
#include "stagec/core_ir.hpp"
#include "stagec/env.hpp"
#include "stagec/eval.hpp"

namespace stagec {

struct CompileOutput {
  SourceProgram source;
  CoreProgram program;
  Theory theory;
};

// Parses, typechecks, and elaborates a program, then validates the
// elaborated core against the recorded types as an internal consistency
// check. A validation failure is reported as an internal error.
CompileOutput compile_source(const std::string& text);

// Expected outcome declared in a test program's first line:
//   -- EXPECT: accept
//   -- EXPECT: reject SomeErrorCode
//   -- EXPECT: runs-to value text
struct Expectation {
  enum class Kind { Accept, Reject, RunsTo };
  Kind kind = Kind::Accept;
  std::string detail;  // error code (Reject) or printed value (RunsTo)
};

std::optional<Expectation> parse_expectation(const std::string& text);

struct VerdictOutcome {
  bool matched = false;
  std::string expected;
  std::string actual;
};

// Runs a program through the pipeline far enough to judge it against the
// expectation: accept stops after elaboration, reject requires a compile
// failure with the given code, runs-to evaluates main and compares the
// printed value.
VerdictOutcome check_expectation(const std::string& text,
                                 const Expectation& exp);

}  // namespace stagec
