#pragma once

#include "stagec/core_ir.hpp"
#include "stagec/env.hpp"

namespace stagec {

// The underlying type of evidence for a constraint: the method type of the
// class instantiated at the constraint argument, wrapped in one Code layer
// per code-modality application.
TypePtr form_constraint(const Theory& theory, const Constraint& c, Span span);

// The underlying type of a qualified scheme: quantifiers stay, qualifiers
// become evidence-function arguments.
TypePtr form_scheme(const Theory& theory, const Scheme& s, Span span);

// Substitutes a type for a class variable throughout a method signature,
// renaming signature binders as needed.
Scheme subst_in_scheme(const Scheme& s, const std::string& var,
                       const TypePtr& replacement);

// Checks that every type variable is bound and every class exists.
void check_type_wf(const Theory& theory, const TypeEnv& env, const TypePtr& t,
                   Span span);
void check_constraint_wf(const Theory& theory, const TypeEnv& env,
                         const Constraint& c, Span span);

// Translates a typing environment into a core environment snapshot
// (evidence bindings become value bindings at their evidence type).
CoreEnv elab_env(const Theory& theory, const TypeEnv& env);

}  // namespace stagec
