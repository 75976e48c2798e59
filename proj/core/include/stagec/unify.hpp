#pragma once

#include <map>

#include "stagec/diagnostics.hpp"
#include "stagec/types.hpp"

namespace stagec {

// First-order unification over types with mutable metavariables.
class Unifier {
 public:
  TypePtr fresh_meta();

  // Resolves all solved metavariables in t, recursively.
  TypePtr zonk(const TypePtr& t) const;
  Constraint zonk_constraint(const Constraint& c) const;

  // Throws CompileError (Phase::Typecheck, code UnificationError) on
  // constructor clashes and occurs-check failures.
  void unify(const TypePtr& a, const TypePtr& b, Span span);

  // Binds an unsolved metavariable directly; used when generalizing.
  void solve_meta(int id, const TypePtr& t);

 private:
  TypePtr resolve_head(TypePtr t) const;
  bool occurs(int id, const TypePtr& t) const;

  std::map<int, TypePtr> solutions_;
  int next_meta_ = 0;
};

}  // namespace stagec
