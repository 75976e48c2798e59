#include "stagec/types.hpp"

#include <map>

namespace stagec {

namespace {

TypePtr mk(Type t) { return std::make_shared<const Type>(std::move(t)); }

}  // namespace

TypePtr t_var(std::string name) { return mk(Type{TyVar{std::move(name)}}); }
TypePtr t_base(std::string name) { return mk(Type{TyBase{std::move(name)}}); }
TypePtr t_int() { return t_base("Int"); }
TypePtr t_bool() { return t_base("Bool"); }
TypePtr t_string() { return t_base("String"); }
TypePtr t_list(TypePtr elem) { return mk(Type{TyList{std::move(elem)}}); }
TypePtr t_pair(TypePtr first, TypePtr second) {
  return mk(Type{TyPair{std::move(first), std::move(second)}});
}
TypePtr t_arrow(TypePtr dom, TypePtr cod) {
  return mk(Type{TyArrow{std::move(dom), std::move(cod)}});
}
TypePtr t_code(TypePtr body) { return mk(Type{TyCode{std::move(body)}}); }
TypePtr t_forall(std::string var, TypePtr body) {
  return mk(Type{TyForall{std::move(var), std::move(body)}});
}
TypePtr t_meta(int id) { return mk(Type{TyMeta{id}}); }

namespace {

bool equal_impl(const TypePtr& a, const TypePtr& b,
                std::map<std::string, std::string>* left_to_right,
                std::map<std::string, std::string>* right_to_left) {
  if (a.get() == b.get()) {
    // Identical nodes are only guaranteed equal when no binder renaming is
    // in effect for the variables they may contain.
    if (!left_to_right || left_to_right->empty()) return true;
  }
  if (a->node.index() != b->node.index()) return false;
  if (auto* va = std::get_if<TyVar>(&a->node)) {
    auto& vb = std::get<TyVar>(b->node);
    if (left_to_right) {
      auto it = left_to_right->find(va->name);
      auto jt = right_to_left->find(vb.name);
      if (it != left_to_right->end() || jt != right_to_left->end()) {
        return it != left_to_right->end() && jt != right_to_left->end() &&
               it->second == vb.name && jt->second == va->name;
      }
    }
    return va->name == vb.name;
  }
  if (auto* ba = std::get_if<TyBase>(&a->node)) {
    return ba->name == std::get<TyBase>(b->node).name;
  }
  if (auto* la = std::get_if<TyList>(&a->node)) {
    return equal_impl(la->elem, std::get<TyList>(b->node).elem, left_to_right,
                      right_to_left);
  }
  if (auto* pa = std::get_if<TyPair>(&a->node)) {
    auto& pb = std::get<TyPair>(b->node);
    return equal_impl(pa->first, pb.first, left_to_right, right_to_left) &&
           equal_impl(pa->second, pb.second, left_to_right, right_to_left);
  }
  if (auto* ra = std::get_if<TyArrow>(&a->node)) {
    auto& rb = std::get<TyArrow>(b->node);
    return equal_impl(ra->dom, rb.dom, left_to_right, right_to_left) &&
           equal_impl(ra->cod, rb.cod, left_to_right, right_to_left);
  }
  if (auto* ca = std::get_if<TyCode>(&a->node)) {
    return equal_impl(ca->body, std::get<TyCode>(b->node).body, left_to_right,
                      right_to_left);
  }
  if (auto* fa = std::get_if<TyForall>(&a->node)) {
    auto& fb = std::get<TyForall>(b->node);
    if (!left_to_right) {
      return fa->var == fb.var &&
             equal_impl(fa->body, fb.body, nullptr, nullptr);
    }
    auto l2r = *left_to_right;
    auto r2l = *right_to_left;
    l2r[fa->var] = fb.var;
    r2l[fb.var] = fa->var;
    return equal_impl(fa->body, fb.body, &l2r, &r2l);
  }
  if (auto* ma = std::get_if<TyMeta>(&a->node)) {
    return ma->id == std::get<TyMeta>(b->node).id;
  }
  return false;
}

}  // namespace

bool type_equal(const TypePtr& a, const TypePtr& b) {
  return equal_impl(a, b, nullptr, nullptr);
}

bool alpha_equal(const TypePtr& a, const TypePtr& b) {
  std::map<std::string, std::string> l2r, r2l;
  return equal_impl(a, b, &l2r, &r2l);
}

void collect_free_tyvars(const TypePtr& t, std::set<std::string>& out) {
  if (auto* v = std::get_if<TyVar>(&t->node)) {
    out.insert(v->name);
  } else if (auto* l = std::get_if<TyList>(&t->node)) {
    collect_free_tyvars(l->elem, out);
  } else if (auto* p = std::get_if<TyPair>(&t->node)) {
    collect_free_tyvars(p->first, out);
    collect_free_tyvars(p->second, out);
  } else if (auto* r = std::get_if<TyArrow>(&t->node)) {
    collect_free_tyvars(r->dom, out);
    collect_free_tyvars(r->cod, out);
  } else if (auto* c = std::get_if<TyCode>(&t->node)) {
    collect_free_tyvars(c->body, out);
  } else if (auto* f = std::get_if<TyForall>(&t->node)) {
    std::set<std::string> inner;
    collect_free_tyvars(f->body, inner);
    inner.erase(f->var);
    out.insert(inner.begin(), inner.end());
  }
}

std::set<std::string> free_tyvars(const TypePtr& t) {
  std::set<std::string> out;
  collect_free_tyvars(t, out);
  return out;
}

bool contains_meta(const TypePtr& t) {
  std::set<int> metas;
  collect_metas(t, metas);
  return !metas.empty();
}

void collect_metas(const TypePtr& t, std::set<int>& out) {
  if (auto* m = std::get_if<TyMeta>(&t->node)) {
    out.insert(m->id);
  } else if (auto* l = std::get_if<TyList>(&t->node)) {
    collect_metas(l->elem, out);
  } else if (auto* p = std::get_if<TyPair>(&t->node)) {
    collect_metas(p->first, out);
    collect_metas(p->second, out);
  } else if (auto* r = std::get_if<TyArrow>(&t->node)) {
    collect_metas(r->dom, out);
    collect_metas(r->cod, out);
  } else if (auto* c = std::get_if<TyCode>(&t->node)) {
    collect_metas(c->body, out);
  } else if (auto* f = std::get_if<TyForall>(&t->node)) {
    collect_metas(f->body, out);
  }
}

TypePtr subst_tyvar(const TypePtr& t, const std::string& var,
                    const TypePtr& replacement) {
  if (auto* v = std::get_if<TyVar>(&t->node)) {
    return v->name == var ? replacement : t;
  }
  if (std::get_if<TyBase>(&t->node) || std::get_if<TyMeta>(&t->node)) {
    return t;
  }
  if (auto* l = std::get_if<TyList>(&t->node)) {
    return t_list(subst_tyvar(l->elem, var, replacement));
  }
  if (auto* p = std::get_if<TyPair>(&t->node)) {
    return t_pair(subst_tyvar(p->first, var, replacement),
                  subst_tyvar(p->second, var, replacement));
  }
  if (auto* r = std::get_if<TyArrow>(&t->node)) {
    return t_arrow(subst_tyvar(r->dom, var, replacement),
                   subst_tyvar(r->cod, var, replacement));
  }
  if (auto* c = std::get_if<TyCode>(&t->node)) {
    return t_code(subst_tyvar(c->body, var, replacement));
  }
  auto& f = std::get<TyForall>(t->node);
  if (f.var == var) return t;
  auto free = free_tyvars(replacement);
  if (free.count(f.var)) {
    // Rename the binder to keep the substituted variable from being captured.
    std::string fresh = f.var;
    std::set<std::string> body_free = free_tyvars(f.body);
    do {
      fresh += "'";
    } while (free.count(fresh) || body_free.count(fresh) || fresh == var);
    TypePtr renamed = subst_tyvar(f.body, f.var, t_var(fresh));
    return t_forall(fresh, subst_tyvar(renamed, var, replacement));
  }
  return t_forall(f.var, subst_tyvar(f.body, var, replacement));
}

bool constraint_equal(const Constraint& a, const Constraint& b) {
  return a.depth == b.depth && a.cls == b.cls && type_equal(a.arg, b.arg);
}

bool constraint_alpha_equal(const Constraint& a, const Constraint& b) {
  return a.depth == b.depth && a.cls == b.cls && alpha_equal(a.arg, b.arg);
}

}  // namespace stagec
