#pragma once

#include <string>

#include "stagec/ast.hpp"

namespace stagec {

// Parses a surface program:  (decl ";")* "main" "=" expr
// Throws CompileError (Phase::Parse) on syntax errors.
SourceProgram parse_source(const std::string& text);

}  // namespace stagec
