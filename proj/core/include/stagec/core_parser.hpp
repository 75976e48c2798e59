#pragma once

#include <string>

#include "stagec/core_ir.hpp"

namespace stagec {

// Parses the textual form produced by the pretty printer back into a core
// program. Identifier occurrences are resolved lexically: binders introduced
// by lambdas and environments become variables, names bound by splice
// definitions or quote environments become splice variables, and everything
// else is treated as a global reference.
CoreProgram parse_core(const std::string& text);

// Parses a single core expression (no trailing declarations). Free
// identifiers resolve to globals.
CoreExprPtr parse_core_expr(const std::string& text);

}  // namespace stagec
