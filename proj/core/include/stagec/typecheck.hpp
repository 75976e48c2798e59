#pragma once

#include "stagec/ast.hpp"
#include "stagec/core_ir.hpp"
#include "stagec/env.hpp"

namespace stagec {

struct CheckResult {
  CoreProgram program;
  Theory theory;
};

// Typechecks a surface program and elaborates it into an explicit core
// program: class constraints become evidence parameters, splices become
// splice-environment entries, and entries at negative levels collapse into
// top-level splice definitions placed before their declaration.
CheckResult check_program(const SourceProgram& src);

}  // namespace stagec
