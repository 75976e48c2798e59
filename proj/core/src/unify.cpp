#include "stagec/unify.hpp"

#include "stagec/pretty.hpp"

namespace stagec {

TypePtr Unifier::fresh_meta() { return t_meta(next_meta_++); }

TypePtr Unifier::resolve_head(TypePtr t) const {
  while (auto* m = std::get_if<TyMeta>(&t->node)) {
    auto it = solutions_.find(m->id);
    if (it == solutions_.end()) break;
    t = it->second;
  }
  return t;
}

TypePtr Unifier::zonk(const TypePtr& t) const {
  TypePtr h = resolve_head(t);
  if (std::get_if<TyVar>(&h->node) || std::get_if<TyBase>(&h->node) ||
      std::get_if<TyMeta>(&h->node)) {
    return h;
  }
  if (auto* l = std::get_if<TyList>(&h->node)) return t_list(zonk(l->elem));
  if (auto* p = std::get_if<TyPair>(&h->node)) {
    return t_pair(zonk(p->first), zonk(p->second));
  }
  if (auto* r = std::get_if<TyArrow>(&h->node)) {
    return t_arrow(zonk(r->dom), zonk(r->cod));
  }
  if (auto* c = std::get_if<TyCode>(&h->node)) return t_code(zonk(c->body));
  auto& f = std::get<TyForall>(h->node);
  return t_forall(f.var, zonk(f.body));
}

Constraint Unifier::zonk_constraint(const Constraint& c) const {
  return Constraint{c.depth, c.cls, zonk(c.arg)};
}

void Unifier::solve_meta(int id, const TypePtr& t) { solutions_[id] = t; }

bool Unifier::occurs(int id, const TypePtr& t) const {
  TypePtr h = resolve_head(t);
  if (auto* m = std::get_if<TyMeta>(&h->node)) return m->id == id;
  if (auto* l = std::get_if<TyList>(&h->node)) return occurs(id, l->elem);
  if (auto* p = std::get_if<TyPair>(&h->node)) {
    return occurs(id, p->first) || occurs(id, p->second);
  }
  if (auto* r = std::get_if<TyArrow>(&h->node)) {
    return occurs(id, r->dom) || occurs(id, r->cod);
  }
  if (auto* c = std::get_if<TyCode>(&h->node)) return occurs(id, c->body);
  if (auto* f = std::get_if<TyForall>(&h->node)) return occurs(id, f->body);
  return false;
}

void Unifier::unify(const TypePtr& a0, const TypePtr& b0, Span span) {
  TypePtr a = resolve_head(a0);
  TypePtr b = resolve_head(b0);
  auto* ma = std::get_if<TyMeta>(&a->node);
  auto* mb = std::get_if<TyMeta>(&b->node);
  if (ma && mb && ma->id == mb->id) return;
  if (ma) {
    if (occurs(ma->id, b)) {
      fail(Phase::Typecheck, "UnificationError",
           "occurs check failed: cannot construct the infinite type " +
               pretty_type(zonk(a)) + " = " + pretty_type(zonk(b)),
           span);
    }
    solutions_[ma->id] = b;
    return;
  }
  if (mb) {
    unify(b, a, span);
    return;
  }
  if (a->node.index() == b->node.index()) {
    if (auto* va = std::get_if<TyVar>(&a->node)) {
      if (va->name == std::get<TyVar>(b->node).name) return;
    } else if (auto* ba = std::get_if<TyBase>(&a->node)) {
      if (ba->name == std::get<TyBase>(b->node).name) return;
    } else if (auto* la = std::get_if<TyList>(&a->node)) {
      unify(la->elem, std::get<TyList>(b->node).elem, span);
      return;
    } else if (auto* pa = std::get_if<TyPair>(&a->node)) {
      auto& pb = std::get<TyPair>(b->node);
      unify(pa->first, pb.first, span);
      unify(pa->second, pb.second, span);
      return;
    } else if (auto* ra = std::get_if<TyArrow>(&a->node)) {
      auto& rb = std::get<TyArrow>(b->node);
      unify(ra->dom, rb.dom, span);
      unify(ra->cod, rb.cod, span);
      return;
    } else if (auto* ca = std::get_if<TyCode>(&a->node)) {
      unify(ca->body, std::get<TyCode>(b->node).body, span);
      return;
    } else if (auto* fa = std::get_if<TyForall>(&a->node)) {
      auto& fb = std::get<TyForall>(b->node);
      // Rename the right binder to the left one and compare bodies.
      unify(fa->body, subst_tyvar(fb.body, fb.var, t_var(fa->var)), span);
      return;
    }
  }
  fail(Phase::Typecheck, "UnificationError",
       "cannot unify " + pretty_type(zonk(a)) + " with " +
           pretty_type(zonk(b)),
       span);
}

}  // namespace stagec
