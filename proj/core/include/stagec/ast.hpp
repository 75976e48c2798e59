#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "stagec/diagnostics.hpp"
#include "stagec/types.hpp"

namespace stagec {

struct SrcExpr;
using SrcExprPtr = std::shared_ptr<const SrcExpr>;

struct EIdent {
  std::string name;
};
struct EIntLit {
  long long value;
};
struct EBoolLit {
  bool value;
};
struct EStrLit {
  std::string value;
};
struct ELam {
  std::string var;
  TypePtr ann;
  SrcExprPtr body;
};
struct EApp {
  SrcExprPtr fn;
  SrcExprPtr arg;
};
struct EQuote {
  SrcExprPtr body;
};
struct ESplice {
  SrcExprPtr body;
};
struct EIfz {
  SrcExprPtr cond;
  SrcExprPtr zero;
  SrcExprPtr succ;
};

struct SrcExpr {
  std::variant<EIdent, EIntLit, EBoolLit, EStrLit, ELam, EApp, EQuote, ESplice,
               EIfz>
      node;
  Span span;
};

SrcExprPtr mk_src(SrcExpr e);

template <typename T>
const T* src_as(const SrcExprPtr& e) {
  return e ? std::get_if<T>(&e->node) : nullptr;
}

struct DefDecl {
  std::string name;
  Scheme sig;
  SrcExprPtr body;
  Span span;
};

struct ClassDecl {
  std::string name;    // class constructor, e.g. Show
  std::string tyvar;   // the class parameter
  std::string method;  // single method name
  Scheme sig;          // method signature, may mention tyvar
  Span span;
};

struct InstDecl {
  std::vector<Constraint> context;
  std::string cls;
  TypePtr head;
  std::string method;
  SrcExprPtr body;
  Span span;
};

using SrcDecl = std::variant<DefDecl, ClassDecl, InstDecl>;

struct SourceProgram {
  std::vector<SrcDecl> decls;
  SrcExprPtr main;
  Span main_span;
};

}  // namespace stagec
