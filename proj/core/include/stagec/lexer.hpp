#pragma once

#include <string>
#include <vector>

#include "stagec/token.hpp"

namespace stagec {

enum class LexMode {
  Source,  // surface programs: no angle brackets, no explicit binders
  Core,    // elaborated programs: type applications, splice environments
};

// Tokenizes the whole input. Throws CompileError (Phase::Parse) on invalid
// characters, unterminated strings, or reserved identifiers in source mode.
std::vector<Token> lex(const std::string& text, LexMode mode);

// Names matching the generated-identifier shapes (sp0, ev12, ...) are
// reserved for the elaborator and rejected in source programs.
bool is_reserved_ident(const std::string& name);

}  // namespace stagec
