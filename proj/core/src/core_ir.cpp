#include "stagec/core_ir.hpp"

#include <map>

namespace stagec {

CoreExprPtr mk_core(CoreExpr e) {
  return std::make_shared<const CoreExpr>(std::move(e));
}

CoreExprPtr c_var(std::string name) { return mk_core(CoreExpr{CVar{std::move(name)}}); }
CoreExprPtr c_global(std::string name) {
  return mk_core(CoreExpr{CGlobal{std::move(name)}});
}
CoreExprPtr c_splice_var(std::string name) {
  return mk_core(CoreExpr{CSpliceVar{std::move(name)}});
}
CoreExprPtr c_int(long long value) { return mk_core(CoreExpr{CIntLitE{value}}); }
CoreExprPtr c_bool(bool value) { return mk_core(CoreExpr{CBoolLitE{value}}); }
CoreExprPtr c_str(std::string value) {
  return mk_core(CoreExpr{CStrLitE{std::move(value)}});
}
CoreExprPtr c_lam(std::string var, TypePtr ann, CoreExprPtr body) {
  return mk_core(CoreExpr{CLam{std::move(var), std::move(ann), std::move(body)}});
}
CoreExprPtr c_app(CoreExprPtr fn, CoreExprPtr arg) {
  return mk_core(CoreExpr{CApp{std::move(fn), std::move(arg)}});
}
CoreExprPtr c_tylam(std::string var, CoreExprPtr body) {
  return mk_core(CoreExpr{CTyLam{std::move(var), std::move(body)}});
}
CoreExprPtr c_tyapp(CoreExprPtr fn, TypePtr arg) {
  return mk_core(CoreExpr{CTyApp{std::move(fn), std::move(arg)}});
}
CoreExprPtr c_quote(CoreExprPtr body, std::vector<SpliceEnvEntry> entries) {
  return mk_core(CoreExpr{CQuote{std::move(body), std::move(entries)}});
}
CoreExprPtr c_ifz(CoreExprPtr cond, CoreExprPtr zero, CoreExprPtr succ) {
  return mk_core(CoreExpr{CIfz{std::move(cond), std::move(zero), std::move(succ)}});
}
CoreExprPtr c_hole(int id) { return mk_core(CoreExpr{CEvHole{id}}); }

namespace {

struct AlphaCtx {
  std::map<std::string, std::string> vars;    // left name -> right name
  std::map<std::string, std::string> tyvars;  // left name -> right name
  std::map<std::string, std::string> splices;
};

bool type_alpha(const TypePtr& a, const TypePtr& b, const AlphaCtx& ctx) {
  if (a->node.index() != b->node.index()) return false;
  if (auto* va = std::get_if<TyVar>(&a->node)) {
    auto& vb = std::get<TyVar>(b->node);
    auto it = ctx.tyvars.find(va->name);
    if (it != ctx.tyvars.end()) return it->second == vb.name;
    return va->name == vb.name;
  }
  if (auto* ba = std::get_if<TyBase>(&a->node)) {
    return ba->name == std::get<TyBase>(b->node).name;
  }
  if (auto* ma = std::get_if<TyMeta>(&a->node)) {
    return ma->id == std::get<TyMeta>(b->node).id;
  }
  if (auto* la = std::get_if<TyList>(&a->node)) {
    return type_alpha(la->elem, std::get<TyList>(b->node).elem, ctx);
  }
  if (auto* pa = std::get_if<TyPair>(&a->node)) {
    auto& pb = std::get<TyPair>(b->node);
    return type_alpha(pa->first, pb.first, ctx) &&
           type_alpha(pa->second, pb.second, ctx);
  }
  if (auto* ra = std::get_if<TyArrow>(&a->node)) {
    auto& rb = std::get<TyArrow>(b->node);
    return type_alpha(ra->dom, rb.dom, ctx) && type_alpha(ra->cod, rb.cod, ctx);
  }
  if (auto* ca = std::get_if<TyCode>(&a->node)) {
    return type_alpha(ca->body, std::get<TyCode>(b->node).body, ctx);
  }
  auto& fa = std::get<TyForall>(a->node);
  auto& fb = std::get<TyForall>(b->node);
  AlphaCtx inner = ctx;
  inner.tyvars[fa.var] = fb.var;
  return type_alpha(fa.body, fb.body, inner);
}

bool expr_alpha(const CoreExprPtr& a, const CoreExprPtr& b, const AlphaCtx& ctx);

bool env_alpha(const CoreEnv& a, const CoreEnv& b, AlphaCtx& ctx) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].index() != b[i].index()) return false;
    if (auto* ta = std::get_if<CTyVarBind>(&a[i])) {
      auto& tb = std::get<CTyVarBind>(b[i]);
      auto it = ctx.tyvars.find(ta->name);
      if (it != ctx.tyvars.end()) {
        if (it->second != tb.name) return false;
      } else if (ta->name != tb.name) {
        return false;
      }
      // Environment entries also act as binders for the entry's body.
      ctx.tyvars[ta->name] = tb.name;
    } else {
      auto& va = std::get<CValBind>(a[i]);
      auto& vb = std::get<CValBind>(b[i]);
      auto it = ctx.vars.find(va.name);
      if (it != ctx.vars.end()) {
        if (it->second != vb.name) return false;
      } else if (va.name != vb.name) {
        return false;
      }
      if (va.level != vb.level) return false;
      if (!type_alpha(va.type, vb.type, ctx)) return false;
      ctx.vars[va.name] = vb.name;
    }
  }
  return true;
}

bool expr_alpha(const CoreExprPtr& a, const CoreExprPtr& b,
                const AlphaCtx& ctx) {
  if (a->node.index() != b->node.index()) return false;
  if (auto* va = std::get_if<CVar>(&a->node)) {
    auto& vb = std::get<CVar>(b->node);
    auto it = ctx.vars.find(va->name);
    if (it != ctx.vars.end()) return it->second == vb.name;
    return va->name == vb.name;
  }
  if (auto* ga = std::get_if<CGlobal>(&a->node)) {
    return ga->name == std::get<CGlobal>(b->node).name;
  }
  if (auto* sa = std::get_if<CSpliceVar>(&a->node)) {
    auto& sb = std::get<CSpliceVar>(b->node);
    auto it = ctx.splices.find(sa->name);
    if (it != ctx.splices.end()) return it->second == sb.name;
    return sa->name == sb.name;
  }
  if (auto* ia = std::get_if<CIntLitE>(&a->node)) {
    return ia->value == std::get<CIntLitE>(b->node).value;
  }
  if (auto* ba = std::get_if<CBoolLitE>(&a->node)) {
    return ba->value == std::get<CBoolLitE>(b->node).value;
  }
  if (auto* sa = std::get_if<CStrLitE>(&a->node)) {
    return sa->value == std::get<CStrLitE>(b->node).value;
  }
  if (auto* ha = std::get_if<CEvHole>(&a->node)) {
    return ha->id == std::get<CEvHole>(b->node).id;
  }
  if (auto* la = std::get_if<CLam>(&a->node)) {
    auto& lb = std::get<CLam>(b->node);
    if (!type_alpha(la->ann, lb.ann, ctx)) return false;
    AlphaCtx inner = ctx;
    inner.vars[la->var] = lb.var;
    return expr_alpha(la->body, lb.body, inner);
  }
  if (auto* aa = std::get_if<CApp>(&a->node)) {
    auto& ab = std::get<CApp>(b->node);
    return expr_alpha(aa->fn, ab.fn, ctx) && expr_alpha(aa->arg, ab.arg, ctx);
  }
  if (auto* ta = std::get_if<CTyLam>(&a->node)) {
    auto& tb = std::get<CTyLam>(b->node);
    AlphaCtx inner = ctx;
    inner.tyvars[ta->var] = tb.var;
    return expr_alpha(ta->body, tb.body, inner);
  }
  if (auto* ta = std::get_if<CTyApp>(&a->node)) {
    auto& tb = std::get<CTyApp>(b->node);
    return expr_alpha(ta->fn, tb.fn, ctx) && type_alpha(ta->arg, tb.arg, ctx);
  }
  if (auto* qa = std::get_if<CQuote>(&a->node)) {
    auto& qb = std::get<CQuote>(b->node);
    if (qa->entries.size() != qb.entries.size()) return false;
    AlphaCtx body_ctx = ctx;
    for (size_t i = 0; i < qa->entries.size(); ++i) {
      const auto& ea = qa->entries[i];
      const auto& eb = qb.entries[i];
      AlphaCtx entry_ctx = ctx;
      if (!env_alpha(ea.delta, eb.delta, entry_ctx)) return false;
      if (!type_alpha(ea.type, eb.type, entry_ctx)) return false;
      if (!expr_alpha(ea.rhs, eb.rhs, entry_ctx)) return false;
      body_ctx.splices[ea.name] = eb.name;
    }
    return expr_alpha(qa->body, qb.body, body_ctx);
  }
  auto& za = std::get<CIfz>(a->node);
  auto& zb = std::get<CIfz>(b->node);
  return expr_alpha(za.cond, zb.cond, ctx) && expr_alpha(za.zero, zb.zero, ctx) &&
         expr_alpha(za.succ, zb.succ, ctx);
}

}  // namespace

bool core_alpha_equal(const CoreExprPtr& a, const CoreExprPtr& b) {
  AlphaCtx ctx;
  return expr_alpha(a, b, ctx);
}

}  // namespace stagec
