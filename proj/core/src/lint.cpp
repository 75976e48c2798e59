#include "stagec/lint.hpp"

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "stagec/builtins.hpp"
#include "stagec/diagnostics.hpp"
#include "stagec/pretty.hpp"

namespace stagec {

namespace {

struct LValBind {
  std::string name;
  TypePtr type;
  int level;
};
struct LTyVarBind {
  std::string name;
};
// A splice variable bound by an enclosing quote's splice environment; delta
// is the environment captured by the defining entry.
struct LSpBind {
  std::string name;
  TypePtr type;
  int level;
  const CoreEnv* delta;
};
using LintBind = std::variant<LValBind, LTyVarBind, LSpBind>;
using LintEnv = std::vector<LintBind>;

struct SpGlobal {
  TypePtr type;
  int level;
  const CoreEnv* delta;
};

[[noreturn]] void lint_fail(std::string code, std::string message) {
  fail(Phase::Lint, std::move(code), std::move(message), Span{});
}

// Ordered-subsequence containment: every binding of delta must occur in env,
// in order, with the same name, level, and type up to renaming of bound type
// variables. Splice bindings in env are skipped; captured environments never
// contain them.
bool env_subsumed(const CoreEnv& delta, const LintEnv& env) {
  size_t j = 0;
  for (const auto& bind : env) {
    if (j == delta.size()) break;
    const CoreBind& want = delta[j];
    if (auto* wv = std::get_if<CValBind>(&want)) {
      if (auto* gv = std::get_if<LValBind>(&bind)) {
        if (gv->name == wv->name && gv->level == wv->level &&
            alpha_equal(gv->type, wv->type)) {
          ++j;
        }
      }
    } else {
      auto& wt = std::get<CTyVarBind>(want);
      if (auto* gt = std::get_if<LTyVarBind>(&bind)) {
        if (gt->name == wt.name) ++j;
      }
    }
  }
  return j == delta.size();
}

void append_core_env(LintEnv& env, const CoreEnv& delta) {
  for (const auto& bind : delta) {
    if (auto* v = std::get_if<CValBind>(&bind)) {
      env.push_back(LValBind{v->name, v->type, v->level});
    } else {
      env.push_back(LTyVarBind{std::get<CTyVarBind>(bind).name});
    }
  }
}

class Linter {
 public:
  explicit Linter(const CoreProgram& program) : program_(program) {
    for (const auto& b : builtins()) {
      TypePtr t = b.sig.mono;
      for (size_t i = b.sig.binders.size(); i-- > 0;) {
        t = t_forall(b.sig.binders[i], t);
      }
      globals_[b.name] = t;
    }
    for (const auto& d : program.decls) {
      if (auto* def = std::get_if<CoreDef>(&d)) all_def_names_.insert(def->name);
    }
  }

  void run() {
    for (const auto& d : program_.decls) {
      if (auto* def = std::get_if<CoreDef>(&d)) {
        lint_def(*def);
      } else {
        lint_spdef(std::get<CoreSpDef>(d));
      }
    }
    TypePtr t = lint_expr(program_.main, {}, 0);
    if (!alpha_equal(t, program_.main_type)) {
      lint_fail("LintTypeMismatch",
                "main has type " + pretty_type(t) + " but is declared at " +
                    pretty_type(program_.main_type));
    }
  }

 private:
  void lint_def(const CoreDef& def) {
    if (globals_.count(def.name)) {
      lint_fail("DuplicateName",
                "global '" + def.name + "' is defined more than once");
    }
    TypePtr t = lint_expr(def.body, {}, 0);
    if (!alpha_equal(t, def.type)) {
      lint_fail("LintTypeMismatch", "definition '" + def.name +
                                        "' has body type " + pretty_type(t) +
                                        " but is declared at " +
                                        pretty_type(def.type));
    }
    globals_[def.name] = def.type;
  }

  void lint_spdef(const CoreSpDef& sp) {
    if (sp_globals_.count(sp.name)) {
      lint_fail("DuplicateName",
                "splice '" + sp.name + "' is defined more than once");
    }
    LintEnv env;
    append_core_env(env, sp.delta);
    TypePtr t = lint_expr(sp.body, env, sp.level);
    TypePtr expected = t_code(sp.type);
    if (!alpha_equal(t, expected)) {
      lint_fail("LintTypeMismatch", "splice '" + sp.name +
                                        "' has body type " + pretty_type(t) +
                                        " but is declared at " +
                                        pretty_type(expected));
    }
    sp_globals_[sp.name] = SpGlobal{sp.type, sp.level, &sp.delta};
  }

  void check_tyvars(const TypePtr& t, const LintEnv& env) {
    std::set<std::string> free = free_tyvars(t);
    for (const auto& name : free) {
      bool found = false;
      for (const auto& bind : env) {
        if (auto* tv = std::get_if<LTyVarBind>(&bind)) {
          if (tv->name == name) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        lint_fail("UnboundTypeVariable", "type variable '" + name +
                                             "' is not in scope in " +
                                             pretty_type(t));
      }
    }
  }

  TypePtr lint_expr(const CoreExprPtr& e, const LintEnv& env, int level) {
    if (auto* v = std::get_if<CVar>(&e->node)) {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (auto* bind = std::get_if<LValBind>(&*it)) {
          if (bind->name != v->name) continue;
          if (bind->level != level) {
            lint_fail("LintStageError",
                      "variable '" + v->name + "' is bound at level " +
                          std::to_string(bind->level) + " but used at level " +
                          std::to_string(level));
          }
          return bind->type;
        }
      }
      lint_fail("UnboundVariable", "variable '" + v->name + "' is not in scope");
    }
    if (auto* g = std::get_if<CGlobal>(&e->node)) return lint_global(g->name);
    if (auto* s = std::get_if<CSpliceVar>(&e->node)) {
      return lint_splice_var(s->name, env, level);
    }
    if (std::get_if<CIntLitE>(&e->node)) return t_int();
    if (std::get_if<CBoolLitE>(&e->node)) return t_bool();
    if (std::get_if<CStrLitE>(&e->node)) return t_string();
    if (auto* l = std::get_if<CLam>(&e->node)) {
      check_tyvars(l->ann, env);
      LintEnv inner = env;
      inner.push_back(LValBind{l->var, l->ann, level});
      return t_arrow(l->ann, lint_expr(l->body, inner, level));
    }
    if (auto* a = std::get_if<CApp>(&e->node)) {
      TypePtr tf = lint_expr(a->fn, env, level);
      TypePtr ta = lint_expr(a->arg, env, level);
      auto* arrow = std::get_if<TyArrow>(&tf->node);
      if (!arrow) {
        lint_fail("LintTypeMismatch",
                  "application of a non-function of type " + pretty_type(tf));
      }
      if (!alpha_equal(arrow->dom, ta)) {
        lint_fail("LintTypeMismatch", "function expects " +
                                          pretty_type(arrow->dom) +
                                          " but argument has type " +
                                          pretty_type(ta));
      }
      return arrow->cod;
    }
    if (auto* tl = std::get_if<CTyLam>(&e->node)) {
      LintEnv inner = env;
      inner.push_back(LTyVarBind{tl->var});
      return t_forall(tl->var, lint_expr(tl->body, inner, level));
    }
    if (auto* ta = std::get_if<CTyApp>(&e->node)) {
      TypePtr tf = lint_expr(ta->fn, env, level);
      check_tyvars(ta->arg, env);
      auto* forall = std::get_if<TyForall>(&tf->node);
      if (!forall) {
        lint_fail("LintTypeMismatch",
                  "type application of a non-polymorphic expression of type " +
                      pretty_type(tf));
      }
      return subst_tyvar(forall->body, forall->var, ta->arg);
    }
    if (auto* q = std::get_if<CQuote>(&e->node)) {
      for (const auto& entry : q->entries) {
        LintEnv entry_env = env;
        append_core_env(entry_env, entry.delta);
        TypePtr t = lint_expr(entry.rhs, entry_env, level);
        TypePtr expected = t_code(entry.type);
        if (!alpha_equal(t, expected)) {
          lint_fail("LintTypeMismatch",
                    "splice entry '" + entry.name + "' has type " +
                        pretty_type(t) + " but is declared at " +
                        pretty_type(expected));
        }
      }
      LintEnv body_env = env;
      for (const auto& entry : q->entries) {
        body_env.push_back(
            LSpBind{entry.name, entry.type, level + 1, &entry.delta});
      }
      return t_code(lint_expr(q->body, body_env, level + 1));
    }
    if (auto* z = std::get_if<CIfz>(&e->node)) {
      TypePtr tc = lint_expr(z->cond, env, level);
      if (!alpha_equal(tc, t_int())) {
        lint_fail("LintTypeMismatch",
                  "ifz condition has type " + pretty_type(tc));
      }
      TypePtr tz = lint_expr(z->zero, env, level);
      TypePtr ts = lint_expr(z->succ, env, level);
      if (!alpha_equal(tz, ts)) {
        lint_fail("LintTypeMismatch", "ifz branches have types " +
                                          pretty_type(tz) + " and " +
                                          pretty_type(ts));
      }
      return tz;
    }
    lint_fail("LintTypeMismatch", "unexpected evidence hole in linted program");
  }

  TypePtr lint_global(const std::string& name) {
    auto it = globals_.find(name);
    if (it != globals_.end()) return it->second;
    if (all_def_names_.count(name)) {
      lint_fail("ForwardGlobalReference",
                "global '" + name +
                    "' is defined later; forward references are not allowed");
    }
    lint_fail("UnboundVariable", "variable '" + name + "' is not in scope");
  }

  TypePtr lint_splice_var(const std::string& name, const LintEnv& env,
                          int level) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      auto* bind = std::get_if<LSpBind>(&*it);
      if (!bind || bind->name != name) continue;
      if (bind->level != level) {
        lint_fail("LintStageError",
                  "splice variable '" + name + "' is bound at level " +
                      std::to_string(bind->level) + " but used at level " +
                      std::to_string(level));
      }
      if (!env_subsumed(*bind->delta, env)) {
        lint_fail("LintEnvMismatch",
                  "environment captured by splice '" + name +
                      "' is not contained in the environment at its use site");
      }
      return bind->type;
    }
    auto it = sp_globals_.find(name);
    if (it == sp_globals_.end()) {
      lint_fail("UnboundSpliceVar",
                "splice variable '" + name + "' is not in scope");
    }
    if (!env_subsumed(*it->second.delta, env)) {
      lint_fail("LintEnvMismatch",
                "environment captured by splice '" + name +
                    "' is not contained in the environment at its use site");
    }
    return it->second.type;
  }

  const CoreProgram& program_;
  std::map<std::string, TypePtr> globals_;
  std::map<std::string, SpGlobal> sp_globals_;
  std::set<std::string> all_def_names_;
};

}  // namespace

void lint_program(const CoreProgram& program) { Linter(program).run(); }

}  // namespace stagec
