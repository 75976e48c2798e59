#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "stagec/ast.hpp"
#include "stagec/types.hpp"

namespace stagec {

// Bindings tracked while typechecking surface programs. Value and evidence
// bindings carry the level they were introduced at.
struct TValBind {
  std::string name;
  TypePtr type;
  int level = 0;
};
struct TTyVarBind {
  std::string name;
};
struct TEvBind {
  std::string name;
  Constraint constraint;
  int level = 0;
};
using TypeBind = std::variant<TValBind, TTyVarBind, TEvBind>;
using TypeEnv = std::vector<TypeBind>;

inline const TValBind* lookup_val(const TypeEnv& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (auto* v = std::get_if<TValBind>(&*it)) {
      if (v->name == name) return v;
    }
  }
  return nullptr;
}

inline bool tyvar_in_scope(const TypeEnv& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (auto* v = std::get_if<TTyVarBind>(&*it)) {
      if (v->name == name) return true;
    }
  }
  return false;
}

struct ClassInfo {
  std::string name;
  std::string tyvar;
  std::string method;
  Scheme sig;
  Span span;
};

// A class instance registered as an implication axiom: for all binders,
// context constraints entail cls applied to the head type.
struct AxiomInfo {
  std::string ev_name;
  std::vector<std::string> binders;
  std::vector<Constraint> context;
  std::string cls;
  TypePtr head;
  Span span;
};

struct GlobalInfo {
  std::string name;
  Scheme sig;
};

// Global typing context accumulated over declarations.
struct Theory {
  std::vector<GlobalInfo> globals;
  std::map<std::string, ClassInfo> classes;
  std::vector<AxiomInfo> axioms;

  const GlobalInfo* lookup_global(const std::string& name) const {
    for (auto it = globals.rbegin(); it != globals.rend(); ++it) {
      if (it->name == name) return &*it;
    }
    return nullptr;
  }
  const ClassInfo* lookup_class(const std::string& name) const {
    auto it = classes.find(name);
    return it == classes.end() ? nullptr : &it->second;
  }
};

}  // namespace stagec
