#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stagec/core_ir.hpp"

namespace stagec {

// True when the expression is a runtime value: literals, lambdas, type
// lambdas, quotations whose entry right-hand sides are all values, partially
// applied builtins, and saturated data constructors.
bool is_value(const CoreExprPtr& e);

struct StepResult {
  CoreExprPtr next;
  std::string label;  // name of the reduction rule that fired
};

// Performs one left-to-right call-by-value reduction step. Returns nullopt
// when the expression is already a value; throws CompileError (Phase::Eval)
// when the expression is stuck.
std::optional<StepResult> step_expr(const CoreExprPtr& e);

// Substitutes a quotation's splice environment into its body: every entry's
// right-hand side must itself be a quotation (recursively flattened), and
// each occurrence of the entry name in the body is replaced by that
// quotation's flattened body. The result contains no splice variables.
CoreExprPtr apply_splice_env(const CoreExprPtr& body,
                             const std::vector<SpliceEnvEntry>& entries);

// Observer invoked after each program step with the step count, the rule
// label, and the program state after the step.
using TraceFn = std::function<void(long long step, const std::string& label,
                                   const CoreProgram& program)>;

struct RunOptions {
  long long max_steps = 1000000;
  TraceFn trace;
};

struct RunResult {
  CoreExprPtr value;
  long long steps = 0;
};

// Runs a whole program: discharges the leading declaration until none remain
// (definitions substitute their evaluated bodies into the rest of the
// program; top-level splices evaluate to quotations whose code is grafted in
// place of the splice name), then evaluates main to a value.
RunResult run_program(const CoreProgram& program, const RunOptions& opts = {});

}  // namespace stagec
