#include "stagec/eval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "stagec/builtins.hpp"
#include "stagec/diagnostics.hpp"
#include "stagec/subst.hpp"

namespace stagec {

namespace {

[[noreturn]] void stuck(const std::string& message) {
  fail(Phase::Eval, "Stuck", message);
}

// An application spine headed by a global: head <tyargs...> args... with the
// type arguments applied before any term arguments.
struct Spine {
  const CGlobal* head = nullptr;
  std::vector<TypePtr> tyargs;
  std::vector<CoreExprPtr> args;
};

std::optional<Spine> analyze_spine(const CoreExprPtr& e) {
  Spine s;
  CoreExprPtr cur = e;
  while (auto* a = core_as<CApp>(cur)) {
    s.args.push_back(a->arg);
    cur = a->fn;
  }
  std::reverse(s.args.begin(), s.args.end());
  while (auto* ta = core_as<CTyApp>(cur)) {
    s.tyargs.push_back(ta->arg);
    cur = ta->fn;
  }
  std::reverse(s.tyargs.begin(), s.tyargs.end());
  s.head = core_as<CGlobal>(cur);
  if (!s.head) return std::nullopt;
  return s;
}

long long int_arg(const Spine& s, size_t i) {
  auto* lit = core_as<CIntLitE>(s.args[i]);
  if (!lit) {
    stuck("builtin '" + s.head->name + "' applied to a non-integer value");
  }
  return lit->value;
}

CoreExprPtr rebuild_quote_with_entry(const CQuote& q, size_t index,
                                     CoreExprPtr rhs) {
  std::vector<SpliceEnvEntry> entries = q.entries;
  entries[index].rhs = std::move(rhs);
  return c_quote(q.body, std::move(entries));
}

StepResult delta_step(const BuiltinInfo& b, const Spine& s) {
  const std::string& name = b.name;
  if (name == "add") return {c_int(int_arg(s, 0) + int_arg(s, 1)), "DE_Delta"};
  if (name == "sub") return {c_int(int_arg(s, 0) - int_arg(s, 1)), "DE_Delta"};
  if (name == "mul") return {c_int(int_arg(s, 0) * int_arg(s, 1)), "DE_Delta"};
  if (name == "eqInt") {
    return {c_bool(int_arg(s, 0) == int_arg(s, 1)), "DE_Delta"};
  }
  if (name == "showInt") {
    return {c_str(std::to_string(int_arg(s, 0))), "DE_Delta"};
  }
  if (name == "fix") {
    if (s.tyargs.size() != 2) {
      stuck("fix applied without full type instantiation");
    }
    const CoreExprPtr& v = s.args[0];
    std::set<std::string> avoid = free_term_vars(v);
    std::string x = "x";
    while (avoid.count(x)) x += "'";
    CoreExprPtr refix = c_app(
        c_tyapp(c_tyapp(c_global("fix"), s.tyargs[0]), s.tyargs[1]), v);
    CoreExprPtr eta = c_lam(x, s.tyargs[0], c_app(refix, c_var(x)));
    return {c_app(v, eta), "DE_Fix"};
  }
  if (name == "matchList") {
    auto scrut = analyze_spine(s.args[0]);
    if (scrut && scrut->head->name == "nil" && scrut->args.empty()) {
      return {s.args[1], "DE_Delta"};
    }
    if (scrut && scrut->head->name == "cons" && scrut->args.size() == 2) {
      return {c_app(c_app(s.args[2], scrut->args[0]), scrut->args[1]),
              "DE_Delta"};
    }
    stuck("matchList applied to a non-list value");
  }
  if (name == "fstP" || name == "sndP") {
    auto p = analyze_spine(s.args[0]);
    if (p && p->head->name == "pair" && p->args.size() == 2) {
      return {name == "fstP" ? p->args[0] : p->args[1], "DE_Delta"};
    }
    stuck("'" + name + "' applied to a non-pair value");
  }
  stuck("builtin '" + name + "' has no reduction rule");
}

}  // namespace

bool is_value(const CoreExprPtr& e) {
  if (core_as<CIntLitE>(e) || core_as<CBoolLitE>(e) || core_as<CStrLitE>(e)) {
    return true;
  }
  if (core_as<CLam>(e) || core_as<CTyLam>(e)) return true;
  if (auto* q = core_as<CQuote>(e)) {
    for (const auto& entry : q->entries) {
      if (!is_value(entry.rhs)) return false;
    }
    return true;
  }
  if (core_as<CGlobal>(e) || core_as<CApp>(e) || core_as<CTyApp>(e)) {
    auto s = analyze_spine(e);
    if (!s) return false;
    const BuiltinInfo* b = lookup_builtin(s->head->name);
    if (!b) return false;
    for (const auto& a : s->args) {
      if (!is_value(a)) return false;
    }
    int n = static_cast<int>(s->args.size());
    return b->constructor ? n <= b->arity : n < b->arity;
  }
  return false;
}

std::optional<StepResult> step_expr(const CoreExprPtr& e) {
  if (is_value(e)) return std::nullopt;

  if (auto* v = core_as<CVar>(e)) {
    stuck("unbound variable '" + v->name + "' at runtime");
  }
  if (auto* g = core_as<CGlobal>(e)) {
    stuck("reference to undefined global '" + g->name + "'");
  }
  if (auto* s = core_as<CSpliceVar>(e)) {
    fail(Phase::Eval, "UnboundSpliceVariable",
         "splice variable '" + s->name + "' has no definition at runtime");
  }
  if (core_as<CEvHole>(e)) {
    stuck("unresolved evidence hole at runtime");
  }

  if (auto* a = core_as<CApp>(e)) {
    if (!is_value(a->fn)) {
      auto st = step_expr(a->fn);
      return StepResult{c_app(st->next, a->arg), st->label};
    }
    if (!is_value(a->arg)) {
      auto st = step_expr(a->arg);
      return StepResult{c_app(a->fn, st->next), st->label};
    }
    if (auto* lam = core_as<CLam>(a->fn)) {
      return StepResult{subst_term(lam->body, lam->var, a->arg), "DE_Beta"};
    }
    if (auto s = analyze_spine(e)) {
      const BuiltinInfo* b = lookup_builtin(s->head->name);
      if (b && !b->constructor && static_cast<int>(s->args.size()) == b->arity) {
        return delta_step(*b, *s);
      }
    }
    stuck("cannot apply a non-function value");
  }

  if (auto* ta = core_as<CTyApp>(e)) {
    if (!is_value(ta->fn)) {
      auto st = step_expr(ta->fn);
      return StepResult{c_tyapp(st->next, ta->arg), st->label};
    }
    if (auto* tl = core_as<CTyLam>(ta->fn)) {
      return StepResult{subst_type_in_expr(tl->body, tl->var, ta->arg),
                        "DE_TBeta"};
    }
    stuck("type application of a non-polymorphic value");
  }

  if (auto* z = core_as<CIfz>(e)) {
    if (!is_value(z->cond)) {
      auto st = step_expr(z->cond);
      return StepResult{c_ifz(st->next, z->zero, z->succ), st->label};
    }
    auto* lit = core_as<CIntLitE>(z->cond);
    if (!lit) stuck("ifz scrutinee is not an integer");
    return StepResult{lit->value == 0 ? z->zero : z->succ, "DE_Ifz"};
  }

  if (auto* q = core_as<CQuote>(e)) {
    for (size_t i = 0; i < q->entries.size(); ++i) {
      if (!is_value(q->entries[i].rhs)) {
        auto st = step_expr(q->entries[i].rhs);
        return StepResult{rebuild_quote_with_entry(*q, i, st->next),
                          st->label};
      }
    }
  }

  stuck("expression has no applicable reduction rule");
}

namespace {

CoreExprPtr graft(const CoreExprPtr& e,
                  const std::map<std::string, CoreExprPtr>& repl,
                  const std::set<std::string>& bound) {
  if (auto* s = core_as<CSpliceVar>(e)) {
    if (bound.count(s->name)) return e;
    auto it = repl.find(s->name);
    if (it != repl.end()) return it->second;
    fail(Phase::Eval, "UnboundSpliceVariable",
         "splice variable '" + s->name +
             "' is not bound by the enclosing splice environment");
  }
  if (auto* l = core_as<CLam>(e)) {
    return c_lam(l->var, l->ann, graft(l->body, repl, bound));
  }
  if (auto* a = core_as<CApp>(e)) {
    return c_app(graft(a->fn, repl, bound), graft(a->arg, repl, bound));
  }
  if (auto* tl = core_as<CTyLam>(e)) {
    return c_tylam(tl->var, graft(tl->body, repl, bound));
  }
  if (auto* ta = core_as<CTyApp>(e)) {
    return c_tyapp(graft(ta->fn, repl, bound), ta->arg);
  }
  if (auto* q = core_as<CQuote>(e)) {
    std::set<std::string> inner = bound;
    std::vector<SpliceEnvEntry> entries;
    for (const auto& entry : q->entries) {
      entries.push_back(SpliceEnvEntry{entry.delta, entry.name, entry.type,
                                       graft(entry.rhs, repl, bound)});
      inner.insert(entry.name);
    }
    return c_quote(graft(q->body, repl, inner), std::move(entries));
  }
  if (auto* z = core_as<CIfz>(e)) {
    return c_ifz(graft(z->cond, repl, bound), graft(z->zero, repl, bound),
                 graft(z->succ, repl, bound));
  }
  return e;
}

}  // namespace

CoreExprPtr apply_splice_env(const CoreExprPtr& body,
                             const std::vector<SpliceEnvEntry>& entries) {
  std::map<std::string, CoreExprPtr> repl;
  for (const auto& entry : entries) {
    auto* q = core_as<CQuote>(entry.rhs);
    if (!q) {
      stuck("splice environment entry '" + entry.name +
            "' is bound to a non-quotation value");
    }
    repl[entry.name] = apply_splice_env(q->body, q->entries);
  }
  return graft(body, repl, {});
}

RunResult run_program(const CoreProgram& program, const RunOptions& opts) {
  CoreProgram cur = program;
  long long steps = 0;
  auto note = [&](const std::string& label) {
    ++steps;
    if (opts.trace) opts.trace(steps, label, cur);
  };
  auto ensure_budget = [&]() {
    if (steps >= opts.max_steps) {
      fail(Phase::Eval, "BudgetExceeded",
           "step budget exceeded (" + std::to_string(opts.max_steps) + ")");
    }
  };

  while (!cur.decls.empty()) {
    ensure_budget();
    CoreDecl& decl = cur.decls.front();
    if (auto* def = std::get_if<CoreDef>(&decl)) {
      if (!is_value(def->body)) {
        auto st = step_expr(def->body);
        def->body = st->next;
        note(st->label);
        continue;
      }
      CoreExprPtr v = def->body;
      std::string name = def->name;
      std::vector<CoreDecl> rest(cur.decls.begin() + 1, cur.decls.end());
      for (auto& rd : rest) {
        if (auto* d2 = std::get_if<CoreDef>(&rd)) {
          d2->body = subst_global(d2->body, name, v);
        } else {
          auto& s2 = std::get<CoreSpDef>(rd);
          s2.body = subst_global(s2.body, name, v, s2.level);
        }
      }
      cur.decls = std::move(rest);
      cur.main = subst_global(cur.main, name, v);
      note("DP_DefBeta");
      continue;
    }
    auto& sp = std::get<CoreSpDef>(decl);
    if (!is_value(sp.body)) {
      auto st = step_expr(sp.body);
      sp.body = st->next;
      note(st->label);
      continue;
    }
    auto* q = core_as<CQuote>(sp.body);
    if (!q) {
      stuck("top-level splice '" + sp.name +
            "' did not evaluate to a quotation");
    }
    CoreExprPtr code = apply_splice_env(q->body, q->entries);
    std::string name = sp.name;
    std::vector<CoreDecl> rest(cur.decls.begin() + 1, cur.decls.end());
    for (auto& rd : rest) {
      if (auto* d2 = std::get_if<CoreDef>(&rd)) {
        d2->body = subst_splice(d2->body, name, code);
      } else {
        auto& s2 = std::get<CoreSpDef>(rd);
        s2.body = subst_splice(s2.body, name, code);
      }
    }
    cur.decls = std::move(rest);
    cur.main = subst_splice(cur.main, name, code);
    note("DP_SPDefBeta");
  }

  while (!is_value(cur.main)) {
    ensure_budget();
    auto st = step_expr(cur.main);
    cur.main = st->next;
    note(st->label);
  }
  return RunResult{cur.main, steps};
}

}  // namespace stagec
