#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "stagec/types.hpp"

namespace stagec {

struct CoreExpr;
using CoreExprPtr = std::shared_ptr<const CoreExpr>;

// Environment entries recorded in splice environments. Splice environments
// capture only type and value bindings, never other splice bindings.
struct CValBind {
  std::string name;
  TypePtr type;
  int level = 0;
};
struct CTyVarBind {
  std::string name;
};
using CoreBind = std::variant<CValBind, CTyVarBind>;
using CoreEnv = std::vector<CoreBind>;

// One entry of a splice environment: delta |- name : type = rhs
// where rhs has type Code type under delta.
struct SpliceEnvEntry {
  CoreEnv delta;
  std::string name;
  TypePtr type;
  CoreExprPtr rhs;
};

struct CVar {
  std::string name;
};
struct CGlobal {
  std::string name;
};
struct CSpliceVar {
  std::string name;
};
struct CIntLitE {
  long long value;
};
struct CBoolLitE {
  bool value;
};
struct CStrLitE {
  std::string value;
};
struct CLam {
  std::string var;
  TypePtr ann;
  CoreExprPtr body;
};
struct CApp {
  CoreExprPtr fn;
  CoreExprPtr arg;
};
struct CTyLam {
  std::string var;
  CoreExprPtr body;
};
struct CTyApp {
  CoreExprPtr fn;
  TypePtr arg;
};
struct CQuote {
  CoreExprPtr body;
  std::vector<SpliceEnvEntry> entries;
};
struct CIfz {
  CoreExprPtr cond;
  CoreExprPtr zero;
  CoreExprPtr succ;
};
// Placeholder for evidence that is still being solved; never survives
// elaboration.
struct CEvHole {
  int id;
};

struct CoreExpr {
  std::variant<CVar, CGlobal, CSpliceVar, CIntLitE, CBoolLitE, CStrLitE, CLam,
               CApp, CTyLam, CTyApp, CQuote, CIfz, CEvHole>
      node;
};

CoreExprPtr mk_core(CoreExpr e);

template <typename T>
const T* core_as(const CoreExprPtr& e) {
  return e ? std::get_if<T>(&e->node) : nullptr;
}

CoreExprPtr c_var(std::string name);
CoreExprPtr c_global(std::string name);
CoreExprPtr c_splice_var(std::string name);
CoreExprPtr c_int(long long value);
CoreExprPtr c_bool(bool value);
CoreExprPtr c_str(std::string value);
CoreExprPtr c_lam(std::string var, TypePtr ann, CoreExprPtr body);
CoreExprPtr c_app(CoreExprPtr fn, CoreExprPtr arg);
CoreExprPtr c_tylam(std::string var, CoreExprPtr body);
CoreExprPtr c_tyapp(CoreExprPtr fn, TypePtr arg);
CoreExprPtr c_quote(CoreExprPtr body, std::vector<SpliceEnvEntry> entries);
CoreExprPtr c_ifz(CoreExprPtr cond, CoreExprPtr zero, CoreExprPtr succ);
CoreExprPtr c_hole(int id);

struct CoreDef {
  std::string name;
  TypePtr type;
  CoreExprPtr body;
};

// Top-level splice definition produced by collapsing a splice environment
// entry at a negative level.
struct CoreSpDef {
  CoreEnv delta;
  int level = -1;
  std::string name;
  TypePtr type;
  CoreExprPtr body;
};

using CoreDecl = std::variant<CoreDef, CoreSpDef>;

struct CoreProgram {
  std::vector<CoreDecl> decls;
  CoreExprPtr main;
  TypePtr main_type;
};

// Structural alpha-equality on core expressions (value and type binders may
// be renamed; globals and splice names must match exactly).
bool core_alpha_equal(const CoreExprPtr& a, const CoreExprPtr& b);

}  // namespace stagec
