#pragma once

#include <string>

#include "stagec/core_ir.hpp"
#include "stagec/types.hpp"

namespace stagec {

std::string pretty_type(const TypePtr& t);
std::string pretty_constraint(const Constraint& c);
std::string pretty_scheme(const Scheme& s);

std::string pretty_core_env(const CoreEnv& env);
std::string pretty_core_expr(const CoreExprPtr& e);
std::string pretty_core_decl(const CoreDecl& d);
std::string pretty_core_program(const CoreProgram& p);

// Printed form of a runtime result (same syntax as core expressions).
std::string pretty_value(const CoreExprPtr& e);

std::string quote_string_literal(const std::string& s);

}  // namespace stagec
