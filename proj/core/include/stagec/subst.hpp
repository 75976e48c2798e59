#pragma once

#include <set>
#include <string>

#include "stagec/core_ir.hpp"

namespace stagec {

// Free term variables of a core expression. Quote bodies and splice-entry
// right-hand sides are traversed; captured environments record but do not
// bind variables, and splice names live in a separate namespace.
std::set<std::string> free_term_vars(const CoreExprPtr& e);

// Capture-avoiding substitution [v/x]: binders are renamed when they would
// capture a free variable of v, and value bindings for x recorded in
// captured splice environments are pruned (the binder for x is consumed by
// the reduction performing the substitution).
CoreExprPtr subst_term(const CoreExprPtr& e, const std::string& x,
                       const CoreExprPtr& v);

// Capture-avoiding type substitution [t/a] over every type position:
// annotations, type-application arguments, splice-entry types, and captured
// environments (whose binding for a is pruned).
CoreExprPtr subst_type_in_expr(const CoreExprPtr& e, const std::string& a,
                               const TypePtr& t);

// Splice substitution [t/sp]: grafting. Occurrences are replaced everywhere,
// including inside quote bodies, without any renaming — variables free in t
// are deliberately captured by binders at the use site, which is sound
// because the use site's environment was checked to contain the splice's
// captured environment. A quote whose own entries rebind sp shadows it.
CoreExprPtr subst_splice(const CoreExprPtr& e, const std::string& sp,
                         const CoreExprPtr& t);

// Adds `by` to every value-binding level recorded in captured splice
// environments, at every depth. A closed expression typed at level n types at
// level n + by after shifting; evaluation never reads the recorded levels, so
// shifting cannot change runtime behaviour.
CoreExprPtr shift_env_levels(const CoreExprPtr& e, int by);

// Global substitution [v/k] into an expression whose ambient level is
// `level`: globals are a separate namespace with no binders, so every
// occurrence is replaced. Top-level values are typed at level 0, so the copy
// inserted at an occurrence whose level is l is shift_env_levels(v, l); this
// keeps the captured-environment annotations inside v consistent with the
// stage the copy now occupies.
CoreExprPtr subst_global(const CoreExprPtr& e, const std::string& k,
                         const CoreExprPtr& v, int level = 0);

}  // namespace stagec
