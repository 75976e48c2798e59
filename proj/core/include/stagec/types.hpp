#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace stagec {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct TyVar {
  std::string name;
};
struct TyBase {
  std::string name;  // Int | Bool | String
};
struct TyList {
  TypePtr elem;
};
struct TyPair {
  TypePtr first;
  TypePtr second;
};
struct TyArrow {
  TypePtr dom;
  TypePtr cod;
};
struct TyCode {
  TypePtr body;
};
struct TyForall {
  std::string var;
  TypePtr body;
};
struct TyMeta {
  int id;
};

struct Type {
  std::variant<TyVar, TyBase, TyList, TyPair, TyArrow, TyCode, TyForall, TyMeta>
      node;
};

TypePtr t_var(std::string name);
TypePtr t_base(std::string name);
TypePtr t_int();
TypePtr t_bool();
TypePtr t_string();
TypePtr t_list(TypePtr elem);
TypePtr t_pair(TypePtr first, TypePtr second);
TypePtr t_arrow(TypePtr dom, TypePtr cod);
TypePtr t_code(TypePtr body);
TypePtr t_forall(std::string var, TypePtr body);
TypePtr t_meta(int id);

template <typename T>
const T* type_as(const TypePtr& t) {
  return t ? std::get_if<T>(&t->node) : nullptr;
}

// Structural equality; free variables compared by name, binders too.
bool type_equal(const TypePtr& a, const TypePtr& b);

// Equality up to renaming of forall-bound variables.
bool alpha_equal(const TypePtr& a, const TypePtr& b);

void collect_free_tyvars(const TypePtr& t, std::set<std::string>& out);
std::set<std::string> free_tyvars(const TypePtr& t);
bool contains_meta(const TypePtr& t);
void collect_metas(const TypePtr& t, std::set<int>& out);

// Capture-avoiding substitution of a type variable.
TypePtr subst_tyvar(const TypePtr& t, const std::string& var,
                    const TypePtr& replacement);

// A class constraint wrapped in `depth` applications of the code modality.
// depth 0 is a bare class constraint.
struct Constraint {
  int depth = 0;
  std::string cls;
  TypePtr arg;
};

bool constraint_equal(const Constraint& a, const Constraint& b);
bool constraint_alpha_equal(const Constraint& a, const Constraint& b);

// Type scheme: forall binders . qualifiers => mono
struct Scheme {
  std::vector<std::string> binders;
  std::vector<Constraint> qualifiers;
  TypePtr mono;
};

}  // namespace stagec
