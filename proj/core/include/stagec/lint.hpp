#pragma once

#include "stagec/core_ir.hpp"

namespace stagec {

// Validates a fully elaborated core program: every declaration body and main
// are re-typechecked against their recorded types, stage levels are enforced
// exactly, and captured splice environments must be consistent with their
// use sites. Throws CompileError with Phase::Lint on the first violation.
void lint_program(const CoreProgram& program);

}  // namespace stagec
