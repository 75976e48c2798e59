#include "stagec/subst.hpp"

namespace stagec {

namespace {

void collect_free(const CoreExprPtr& e, std::set<std::string> bound,
                  std::set<std::string>& out) {
  if (auto* v = std::get_if<CVar>(&e->node)) {
    if (!bound.count(v->name)) out.insert(v->name);
    return;
  }
  if (auto* l = std::get_if<CLam>(&e->node)) {
    std::set<std::string> inner = bound;
    inner.insert(l->var);
    collect_free(l->body, std::move(inner), out);
    return;
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    collect_free(a->fn, bound, out);
    collect_free(a->arg, std::move(bound), out);
    return;
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    collect_free(tl->body, std::move(bound), out);
    return;
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    collect_free(ta->fn, std::move(bound), out);
    return;
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    collect_free(q->body, bound, out);
    for (const auto& entry : q->entries) collect_free(entry.rhs, bound, out);
    return;
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    collect_free(z->cond, bound, out);
    collect_free(z->zero, bound, out);
    collect_free(z->succ, std::move(bound), out);
    return;
  }
}

// Every term-variable name mentioned anywhere, bound or free, including the
// names recorded in captured environments; used to pick fresh binder names.
void collect_names(const CoreExprPtr& e, std::set<std::string>& out) {
  if (auto* v = std::get_if<CVar>(&e->node)) {
    out.insert(v->name);
  } else if (auto* l = std::get_if<CLam>(&e->node)) {
    out.insert(l->var);
    collect_names(l->body, out);
  } else if (auto* a = std::get_if<CApp>(&e->node)) {
    collect_names(a->fn, out);
    collect_names(a->arg, out);
  } else if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    collect_names(tl->body, out);
  } else if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    collect_names(ta->fn, out);
  } else if (auto* q = std::get_if<CQuote>(&e->node)) {
    collect_names(q->body, out);
    for (const auto& entry : q->entries) {
      for (const auto& bind : entry.delta) {
        if (auto* vb = std::get_if<CValBind>(&bind)) out.insert(vb->name);
      }
      collect_names(entry.rhs, out);
    }
  } else if (auto* z = std::get_if<CIfz>(&e->node)) {
    collect_names(z->cond, out);
    collect_names(z->zero, out);
    collect_names(z->succ, out);
  }
}

std::string fresh_against(const std::string& base,
                          const std::set<std::string>& avoid) {
  std::string name = base;
  while (avoid.count(name)) name += "'";
  return name;
}

// Renames free occurrences of old to nw, rewriting the recorded name in
// captured environments along the way. nw must not occur anywhere in e.
CoreExprPtr rename_term(const CoreExprPtr& e, const std::string& old,
                        const std::string& nw) {
  if (auto* v = std::get_if<CVar>(&e->node)) {
    return v->name == old ? c_var(nw) : e;
  }
  if (auto* l = std::get_if<CLam>(&e->node)) {
    if (l->var == old) return e;
    return c_lam(l->var, l->ann, rename_term(l->body, old, nw));
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    return c_app(rename_term(a->fn, old, nw), rename_term(a->arg, old, nw));
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    return c_tylam(tl->var, rename_term(tl->body, old, nw));
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    return c_tyapp(rename_term(ta->fn, old, nw), ta->arg);
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    std::vector<SpliceEnvEntry> entries;
    for (const auto& entry : q->entries) {
      CoreEnv delta;
      for (const auto& bind : entry.delta) {
        if (auto* vb = std::get_if<CValBind>(&bind)) {
          delta.push_back(CValBind{vb->name == old ? nw : vb->name, vb->type,
                                   vb->level});
        } else {
          delta.push_back(bind);
        }
      }
      entries.push_back(SpliceEnvEntry{std::move(delta), entry.name, entry.type,
                                       rename_term(entry.rhs, old, nw)});
    }
    return c_quote(rename_term(q->body, old, nw), std::move(entries));
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    return c_ifz(rename_term(z->cond, old, nw), rename_term(z->zero, old, nw),
                 rename_term(z->succ, old, nw));
  }
  return e;
}

CoreExprPtr subst_term_impl(const CoreExprPtr& e, const std::string& x,
                            const CoreExprPtr& v,
                            const std::set<std::string>& fv_v) {
  if (auto* var = std::get_if<CVar>(&e->node)) {
    return var->name == x ? v : e;
  }
  if (auto* l = std::get_if<CLam>(&e->node)) {
    if (l->var == x) return e;
    if (fv_v.count(l->var)) {
      std::set<std::string> avoid;
      collect_names(v, avoid);
      collect_names(l->body, avoid);
      avoid.insert(x);
      std::string fresh = fresh_against(l->var, avoid);
      CoreExprPtr body = rename_term(l->body, l->var, fresh);
      return c_lam(fresh, l->ann, subst_term_impl(body, x, v, fv_v));
    }
    return c_lam(l->var, l->ann, subst_term_impl(l->body, x, v, fv_v));
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    return c_app(subst_term_impl(a->fn, x, v, fv_v),
                 subst_term_impl(a->arg, x, v, fv_v));
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    return c_tylam(tl->var, subst_term_impl(tl->body, x, v, fv_v));
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    return c_tyapp(subst_term_impl(ta->fn, x, v, fv_v), ta->arg);
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    std::vector<SpliceEnvEntry> entries;
    for (const auto& entry : q->entries) {
      CoreEnv delta;
      for (const auto& bind : entry.delta) {
        if (auto* vb = std::get_if<CValBind>(&bind)) {
          if (vb->name == x) continue;  // the binder for x was consumed
        }
        delta.push_back(bind);
      }
      entries.push_back(SpliceEnvEntry{std::move(delta), entry.name, entry.type,
                                       subst_term_impl(entry.rhs, x, v, fv_v)});
    }
    return c_quote(subst_term_impl(q->body, x, v, fv_v), std::move(entries));
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    return c_ifz(subst_term_impl(z->cond, x, v, fv_v),
                 subst_term_impl(z->zero, x, v, fv_v),
                 subst_term_impl(z->succ, x, v, fv_v));
  }
  return e;
}

void collect_all_tyvars_in_type(const TypePtr& t, std::set<std::string>& out) {
  if (auto* v = std::get_if<TyVar>(&t->node)) {
    out.insert(v->name);
  } else if (auto* l = std::get_if<TyList>(&t->node)) {
    collect_all_tyvars_in_type(l->elem, out);
  } else if (auto* p = std::get_if<TyPair>(&t->node)) {
    collect_all_tyvars_in_type(p->first, out);
    collect_all_tyvars_in_type(p->second, out);
  } else if (auto* r = std::get_if<TyArrow>(&t->node)) {
    collect_all_tyvars_in_type(r->dom, out);
    collect_all_tyvars_in_type(r->cod, out);
  } else if (auto* c = std::get_if<TyCode>(&t->node)) {
    collect_all_tyvars_in_type(c->body, out);
  } else if (auto* f = std::get_if<TyForall>(&t->node)) {
    out.insert(f->var);
    collect_all_tyvars_in_type(f->body, out);
  }
}

void collect_tyvar_names(const CoreExprPtr& e, std::set<std::string>& out) {
  if (auto* l = std::get_if<CLam>(&e->node)) {
    collect_all_tyvars_in_type(l->ann, out);
    collect_tyvar_names(l->body, out);
  } else if (auto* a = std::get_if<CApp>(&e->node)) {
    collect_tyvar_names(a->fn, out);
    collect_tyvar_names(a->arg, out);
  } else if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    out.insert(tl->var);
    collect_tyvar_names(tl->body, out);
  } else if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    collect_tyvar_names(ta->fn, out);
    collect_all_tyvars_in_type(ta->arg, out);
  } else if (auto* q = std::get_if<CQuote>(&e->node)) {
    collect_tyvar_names(q->body, out);
    for (const auto& entry : q->entries) {
      for (const auto& bind : entry.delta) {
        if (auto* vb = std::get_if<CValBind>(&bind)) {
          collect_all_tyvars_in_type(vb->type, out);
        } else {
          out.insert(std::get<CTyVarBind>(bind).name);
        }
      }
      collect_all_tyvars_in_type(entry.type, out);
      collect_tyvar_names(entry.rhs, out);
    }
  } else if (auto* z = std::get_if<CIfz>(&e->node)) {
    collect_tyvar_names(z->cond, out);
    collect_tyvar_names(z->zero, out);
    collect_tyvar_names(z->succ, out);
  }
}

CoreExprPtr rename_tyvar_in_expr(const CoreExprPtr& e, const std::string& old,
                                 const std::string& nw) {
  auto ren = [&](const TypePtr& t) { return subst_tyvar(t, old, t_var(nw)); };
  if (auto* l = std::get_if<CLam>(&e->node)) {
    return c_lam(l->var, ren(l->ann), rename_tyvar_in_expr(l->body, old, nw));
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    return c_app(rename_tyvar_in_expr(a->fn, old, nw),
                 rename_tyvar_in_expr(a->arg, old, nw));
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    if (tl->var == old) return e;
    return c_tylam(tl->var, rename_tyvar_in_expr(tl->body, old, nw));
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    return c_tyapp(rename_tyvar_in_expr(ta->fn, old, nw), ren(ta->arg));
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    std::vector<SpliceEnvEntry> entries;
    for (const auto& entry : q->entries) {
      CoreEnv delta;
      for (const auto& bind : entry.delta) {
        if (auto* vb = std::get_if<CValBind>(&bind)) {
          delta.push_back(CValBind{vb->name, ren(vb->type), vb->level});
        } else {
          auto& tv = std::get<CTyVarBind>(bind);
          delta.push_back(CTyVarBind{tv.name == old ? nw : tv.name});
        }
      }
      entries.push_back(SpliceEnvEntry{std::move(delta), entry.name,
                                       ren(entry.type),
                                       rename_tyvar_in_expr(entry.rhs, old, nw)});
    }
    return c_quote(rename_tyvar_in_expr(q->body, old, nw), std::move(entries));
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    return c_ifz(rename_tyvar_in_expr(z->cond, old, nw),
                 rename_tyvar_in_expr(z->zero, old, nw),
                 rename_tyvar_in_expr(z->succ, old, nw));
  }
  return e;
}

}  // namespace

std::set<std::string> free_term_vars(const CoreExprPtr& e) {
  std::set<std::string> out;
  collect_free(e, {}, out);
  return out;
}

CoreExprPtr subst_term(const CoreExprPtr& e, const std::string& x,
                       const CoreExprPtr& v) {
  std::set<std::string> fv = free_term_vars(v);
  return subst_term_impl(e, x, v, fv);
}

CoreExprPtr subst_type_in_expr(const CoreExprPtr& e, const std::string& a,
                               const TypePtr& t) {
  auto sub = [&](const TypePtr& ty) { return subst_tyvar(ty, a, t); };
  if (auto* l = std::get_if<CLam>(&e->node)) {
    return c_lam(l->var, sub(l->ann), subst_type_in_expr(l->body, a, t));
  }
  if (auto* ap = std::get_if<CApp>(&e->node)) {
    return c_app(subst_type_in_expr(ap->fn, a, t),
                 subst_type_in_expr(ap->arg, a, t));
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    if (tl->var == a) return e;
    std::set<std::string> fv = free_tyvars(t);
    if (fv.count(tl->var)) {
      std::set<std::string> avoid = fv;
      collect_tyvar_names(tl->body, avoid);
      avoid.insert(a);
      std::string fresh = fresh_against(tl->var, avoid);
      CoreExprPtr body = rename_tyvar_in_expr(tl->body, tl->var, fresh);
      return c_tylam(fresh, subst_type_in_expr(body, a, t));
    }
    return c_tylam(tl->var, subst_type_in_expr(tl->body, a, t));
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    return c_tyapp(subst_type_in_expr(ta->fn, a, t), sub(ta->arg));
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    std::vector<SpliceEnvEntry> entries;
    for (const auto& entry : q->entries) {
      CoreEnv delta;
      for (const auto& bind : entry.delta) {
        if (auto* vb = std::get_if<CValBind>(&bind)) {
          delta.push_back(CValBind{vb->name, sub(vb->type), vb->level});
        } else {
          if (std::get<CTyVarBind>(bind).name == a) {
            continue;  // the binder for a was consumed
          }
          delta.push_back(bind);
        }
      }
      entries.push_back(SpliceEnvEntry{std::move(delta), entry.name,
                                       sub(entry.type),
                                       subst_type_in_expr(entry.rhs, a, t)});
    }
    return c_quote(subst_type_in_expr(q->body, a, t), std::move(entries));
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    return c_ifz(subst_type_in_expr(z->cond, a, t),
                 subst_type_in_expr(z->zero, a, t),
                 subst_type_in_expr(z->succ, a, t));
  }
  return e;
}

CoreExprPtr subst_splice(const CoreExprPtr& e, const std::string& sp,
                         const CoreExprPtr& t) {
  if (auto* s = std::get_if<CSpliceVar>(&e->node)) {
    return s->name == sp ? t : e;
  }
  if (auto* l = std::get_if<CLam>(&e->node)) {
    return c_lam(l->var, l->ann, subst_splice(l->body, sp, t));
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    return c_app(subst_splice(a->fn, sp, t), subst_splice(a->arg, sp, t));
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    return c_tylam(tl->var, subst_splice(tl->body, sp, t));
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    return c_tyapp(subst_splice(ta->fn, sp, t), ta->arg);
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    bool shadowed = false;
    std::vector<SpliceEnvEntry> entries;
    for (const auto& entry : q->entries) {
      if (entry.name == sp) shadowed = true;
      entries.push_back(SpliceEnvEntry{entry.delta, entry.name, entry.type,
                                       subst_splice(entry.rhs, sp, t)});
    }
    CoreExprPtr body = shadowed ? q->body : subst_splice(q->body, sp, t);
    return c_quote(body, std::move(entries));
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    return c_ifz(subst_splice(z->cond, sp, t), subst_splice(z->zero, sp, t),
                 subst_splice(z->succ, sp, t));
  }
  return e;
}

CoreExprPtr shift_env_levels(const CoreExprPtr& e, int by) {
  if (by == 0) return e;
  if (auto* l = std::get_if<CLam>(&e->node)) {
    return c_lam(l->var, l->ann, shift_env_levels(l->body, by));
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    return c_app(shift_env_levels(a->fn, by), shift_env_levels(a->arg, by));
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    return c_tylam(tl->var, shift_env_levels(tl->body, by));
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    return c_tyapp(shift_env_levels(ta->fn, by), ta->arg);
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    std::vector<SpliceEnvEntry> entries;
    for (const auto& entry : q->entries) {
      CoreEnv delta;
      for (const auto& b : entry.delta) {
        if (const auto* vb = std::get_if<CValBind>(&b)) {
          delta.push_back(CValBind{vb->name, vb->type, vb->level + by});
        } else {
          delta.push_back(b);
        }
      }
      entries.push_back(SpliceEnvEntry{std::move(delta), entry.name,
                                       entry.type,
                                       shift_env_levels(entry.rhs, by)});
    }
    return c_quote(shift_env_levels(q->body, by), std::move(entries));
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    return c_ifz(shift_env_levels(z->cond, by), shift_env_levels(z->zero, by),
                 shift_env_levels(z->succ, by));
  }
  return e;
}

CoreExprPtr subst_global(const CoreExprPtr& e, const std::string& k,
                         const CoreExprPtr& v, int level) {
  if (auto* g = std::get_if<CGlobal>(&e->node)) {
    return g->name == k ? shift_env_levels(v, level) : e;
  }
  if (auto* l = std::get_if<CLam>(&e->node)) {
    return c_lam(l->var, l->ann, subst_global(l->body, k, v, level));
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    return c_app(subst_global(a->fn, k, v, level),
                 subst_global(a->arg, k, v, level));
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    return c_tylam(tl->var, subst_global(tl->body, k, v, level));
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    return c_tyapp(subst_global(ta->fn, k, v, level), ta->arg);
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    std::vector<SpliceEnvEntry> entries;
    for (const auto& entry : q->entries) {
      entries.push_back(SpliceEnvEntry{entry.delta, entry.name, entry.type,
                                       subst_global(entry.rhs, k, v, level)});
    }
    return c_quote(subst_global(q->body, k, v, level + 1),
                   std::move(entries));
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    return c_ifz(subst_global(z->cond, k, v, level),
                 subst_global(z->zero, k, v, level),
                 subst_global(z->succ, k, v, level));
  }
  return e;
}

}  // namespace stagec
