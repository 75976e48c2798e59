#include "stagec/forms.hpp"

namespace stagec {

Scheme subst_in_scheme(const Scheme& s, const std::string& var,
                       const TypePtr& replacement) {
  for (const auto& b : s.binders) {
    if (b == var) return s;  // shadowed by the scheme's own binder
  }
  Scheme out = s;
  std::set<std::string> repl_free = free_tyvars(replacement);
  for (size_t i = 0; i < out.binders.size(); ++i) {
    if (!repl_free.count(out.binders[i])) continue;
    std::string fresh = out.binders[i];
    do {
      fresh += "'";
    } while (repl_free.count(fresh) || fresh == var);
    TypePtr fv = t_var(fresh);
    for (auto& q : out.qualifiers) q.arg = subst_tyvar(q.arg, out.binders[i], fv);
    out.mono = subst_tyvar(out.mono, out.binders[i], fv);
    out.binders[i] = fresh;
  }
  for (auto& q : out.qualifiers) q.arg = subst_tyvar(q.arg, var, replacement);
  out.mono = subst_tyvar(out.mono, var, replacement);
  return out;
}

TypePtr form_constraint(const Theory& theory, const Constraint& c, Span span) {
  const ClassInfo* cls = theory.lookup_class(c.cls);
  if (!cls) {
    fail(Phase::Typecheck, "UnknownClass", "unknown class '" + c.cls + "'",
         span);
  }
  Scheme inst = subst_in_scheme(cls->sig, cls->tyvar, c.arg);
  TypePtr base = form_scheme(theory, inst, span);
  for (int i = 0; i < c.depth; ++i) base = t_code(base);
  return base;
}

TypePtr form_scheme(const Theory& theory, const Scheme& s, Span span) {
  TypePtr t = s.mono;
  for (auto it = s.qualifiers.rbegin(); it != s.qualifiers.rend(); ++it) {
    t = t_arrow(form_constraint(theory, *it, span), t);
  }
  for (auto it = s.binders.rbegin(); it != s.binders.rend(); ++it) {
    t = t_forall(*it, t);
  }
  return t;
}

namespace {

void wf_impl(const Theory& theory, const TypeEnv& env, const TypePtr& t,
             Span span, std::set<std::string>& bound) {
  if (auto* v = std::get_if<TyVar>(&t->node)) {
    if (!bound.count(v->name) && !tyvar_in_scope(env, v->name)) {
      fail(Phase::Typecheck, "UnboundTypeVariable",
           "type variable '" + v->name + "' is not in scope", span);
    }
    return;
  }
  if (std::get_if<TyBase>(&t->node) || std::get_if<TyMeta>(&t->node)) return;
  if (auto* l = std::get_if<TyList>(&t->node)) {
    wf_impl(theory, env, l->elem, span, bound);
    return;
  }
  if (auto* p = std::get_if<TyPair>(&t->node)) {
    wf_impl(theory, env, p->first, span, bound);
    wf_impl(theory, env, p->second, span, bound);
    return;
  }
  if (auto* r = std::get_if<TyArrow>(&t->node)) {
    wf_impl(theory, env, r->dom, span, bound);
    wf_impl(theory, env, r->cod, span, bound);
    return;
  }
  if (auto* c = std::get_if<TyCode>(&t->node)) {
    wf_impl(theory, env, c->body, span, bound);
    return;
  }
  auto& f = std::get<TyForall>(t->node);
  bool inserted = bound.insert(f.var).second;
  wf_impl(theory, env, f.body, span, bound);
  if (inserted) bound.erase(f.var);
}

}  // namespace

void check_type_wf(const Theory& theory, const TypeEnv& env, const TypePtr& t,
                   Span span) {
  std::set<std::string> bound;
  wf_impl(theory, env, t, span, bound);
}

void check_constraint_wf(const Theory& theory, const TypeEnv& env,
                         const Constraint& c, Span span) {
  if (!theory.lookup_class(c.cls)) {
    fail(Phase::Typecheck, "UnknownClass", "unknown class '" + c.cls + "'",
         span);
  }
  check_type_wf(theory, env, c.arg, span);
}

CoreEnv elab_env(const Theory& theory, const TypeEnv& env) {
  CoreEnv out;
  for (const auto& bind : env) {
    if (auto* v = std::get_if<TValBind>(&bind)) {
      out.push_back(CValBind{v->name, v->type, v->level});
    } else if (auto* tv = std::get_if<TTyVarBind>(&bind)) {
      out.push_back(CTyVarBind{tv->name});
    } else {
      const auto& ev = std::get<TEvBind>(bind);
      out.push_back(CValBind{ev.name,
                             form_constraint(theory, ev.constraint, Span{}),
                             ev.level});
    }
  }
  return out;
}

}  // namespace stagec
