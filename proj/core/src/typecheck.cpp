#include "stagec/typecheck.hpp"

#include <cctype>
#include <map>
#include <set>

#include "stagec/builtins.hpp"
#include "stagec/entail.hpp"
#include "stagec/forms.hpp"
#include "stagec/lexer.hpp"
#include "stagec/pretty.hpp"
#include "stagec/unify.hpp"

namespace stagec {

namespace {

[[noreturn]] void internal_error(const std::string& msg) {
  fail(Phase::Internal, "InternalError", msg, Span{});
}

bool expr_mentions_var(const CoreExprPtr& e, const std::string& name) {
  if (auto* v = std::get_if<CVar>(&e->node)) return v->name == name;
  if (auto* l = std::get_if<CLam>(&e->node)) {
    return l->var != name && expr_mentions_var(l->body, name);
  }
  if (auto* a = std::get_if<CApp>(&e->node)) {
    return expr_mentions_var(a->fn, name) || expr_mentions_var(a->arg, name);
  }
  if (auto* tl = std::get_if<CTyLam>(&e->node)) {
    return expr_mentions_var(tl->body, name);
  }
  if (auto* ta = std::get_if<CTyApp>(&e->node)) {
    return expr_mentions_var(ta->fn, name);
  }
  if (auto* q = std::get_if<CQuote>(&e->node)) {
    if (expr_mentions_var(q->body, name)) return true;
    for (const auto& entry : q->entries) {
      if (expr_mentions_var(entry.rhs, name)) return true;
    }
    return false;
  }
  if (auto* z = std::get_if<CIfz>(&e->node)) {
    return expr_mentions_var(z->cond, name) || expr_mentions_var(z->zero, name) ||
           expr_mentions_var(z->succ, name);
  }
  return false;
}

void collect_type_metas_ordered(const TypePtr& t, std::vector<int>& order,
                                std::set<int>& seen) {
  if (auto* m = std::get_if<TyMeta>(&t->node)) {
    if (seen.insert(m->id).second) order.push_back(m->id);
    return;
  }
  if (auto* l = std::get_if<TyList>(&t->node)) {
    collect_type_metas_ordered(l->elem, order, seen);
  } else if (auto* p = std::get_if<TyPair>(&t->node)) {
    collect_type_metas_ordered(p->first, order, seen);
    collect_type_metas_ordered(p->second, order, seen);
  } else if (auto* r = std::get_if<TyArrow>(&t->node)) {
    collect_type_metas_ordered(r->dom, order, seen);
    collect_type_metas_ordered(r->cod, order, seen);
  } else if (auto* c = std::get_if<TyCode>(&t->node)) {
    collect_type_metas_ordered(c->body, order, seen);
  } else if (auto* f = std::get_if<TyForall>(&t->node)) {
    collect_type_metas_ordered(f->body, order, seen);
  }
}

// Checks and elaborates one declaration body. Phase one walks the surface
// expression, inferring types and emitting core with evidence holes; phase
// two ("finish") solves the collected constraints, fills the holes, zonks
// all types, and finalizes splice environments.
class DeclChecker {
 public:
  DeclChecker(const Theory& theory, Freshener& fresh,
              std::set<std::string> future_globals, Span decl_span)
      : theory_(theory),
        fresh_(fresh),
        future_globals_(std::move(future_globals)),
        decl_span_(decl_span) {}

  struct Checked {
    TypePtr type;
    CoreExprPtr core;
  };

  Checked check(const SrcExprPtr& e, const TypeEnv& env, int level) {
    if (auto* id = src_as<EIdent>(e)) return check_ident(*id, env, level, e->span);
    if (auto* i = src_as<EIntLit>(e)) return {t_int(), c_int(i->value)};
    if (auto* b = src_as<EBoolLit>(e)) return {t_bool(), c_bool(b->value)};
    if (auto* s = src_as<EStrLit>(e)) return {t_string(), c_str(s->value)};
    if (auto* l = src_as<ELam>(e)) {
      check_type_wf(theory_, env, l->ann, e->span);
      TypeEnv inner = env;
      inner.push_back(TValBind{l->var, l->ann, level});
      Checked body = check(l->body, inner, level);
      return {t_arrow(l->ann, body.type), c_lam(l->var, l->ann, body.core)};
    }
    if (auto* a = src_as<EApp>(e)) {
      Checked fn = check(a->fn, env, level);
      Checked arg = check(a->arg, env, level);
      TypePtr result = unifier_.fresh_meta();
      unifier_.unify(fn.type, t_arrow(arg.type, result), e->span);
      return {result, c_app(fn.core, arg.core)};
    }
    if (auto* z = src_as<EIfz>(e)) {
      Checked cond = check(z->cond, env, level);
      unifier_.unify(cond.type, t_int(), z->cond->span);
      Checked zero = check(z->zero, env, level);
      Checked succ = check(z->succ, env, level);
      unifier_.unify(zero.type, succ.type, e->span);
      return {zero.type, c_ifz(cond.core, zero.core, succ.core)};
    }
    if (auto* q = src_as<EQuote>(e)) {
      int slot_id = static_cast<int>(slots_.size());
      slots_.push_back(QuoteSlot{slot_id, level, {}, {}});
      slot_stack_.push_back(slot_id);
      Checked body = check(q->body, env, level + 1);
      slot_stack_.pop_back();
      CoreExprPtr core = c_quote(body.core, {});
      quote_slot_of_[core.get()] = slot_id;
      return {t_code(body.type), core};
    }
    auto* s = src_as<ESplice>(e);
    if (!s) internal_error("unhandled surface expression");
    Checked body = check(s->body, env, level - 1);
    TypePtr inner_type = unifier_.fresh_meta();
    unifier_.unify(body.type, t_code(inner_type), e->span);
    PendingEntry entry;
    entry.name = fresh_.fresh_sp();
    entry.type = inner_type;
    entry.rhs = body.core;
    entry.env_snapshot = env;
    std::string sp_name = entry.name;
    attach_entry_phase1(std::move(entry), level - 1);
    return {inner_type, c_splice_var(sp_name)};
  }

  // ---- phase two ------------------------------------------------------------

  struct FinishOptions {
    bool generalize = false;  // quantify residual type variables and abstract
                              // residual constraints (used for main)
    TypePtr result_type;      // scanned first so quantifier order follows the
                              // inferred type, left to right
  };

  struct Finished {
    CoreExprPtr core;
    std::vector<std::string> gen_binders;
    std::vector<Constraint> abstracted;
    std::vector<std::string> abstracted_names;
    std::vector<CoreDecl> spdefs;
  };

  Finished finish(const CoreExprPtr& phase1_core, const FinishOptions& opts) {
    Finished out;
    if (opts.generalize) {
      std::vector<int> metas = residual_metas(phase1_core, opts.result_type);
      for (size_t i = 0; i < metas.size(); ++i) {
        std::string name = gen_name(i);
        out.gen_binders.push_back(name);
        unifier_.solve_meta(metas[i], t_var(name));
      }
    }
    solve_wanteds(opts, out);
    out.core = rebuild(phase1_core, out);
    for (auto& [level, entries] : decl_tsp_phase1_) {
      if (level >= 0) internal_error("top-level splice entry at level >= 0");
      for (auto& pe : entries) {
        CoreSpDef sp;
        sp.level = level;
        sp.name = pe.name;
        sp.type = zonk_checked(pe.type);
        sp.body = rebuild(pe.rhs, out);
        sp.delta = final_delta(pe.env_snapshot, out);
        out.spdefs.push_back(std::move(sp));
      }
    }
    if (ambiguous_) {
      if (opts.generalize) {
        internal_error("residual metavariable survived generalization");
      }
      fail(Phase::Typecheck, "AmbiguousType",
           "ambiguous type: a type variable is not determined by the "
           "declaration signature",
           decl_span_);
    }
    return out;
  }

  Unifier& unifier() { return unifier_; }

 private:
  struct PendingWanted {
    int hole_id;
    Constraint constraint;
    int level;
    TypeEnv env_snapshot;
    std::vector<int> slot_stack;
    Span span;
  };

  struct PendingEntry {
    std::string name;
    TypePtr type;
    CoreExprPtr rhs;
    TypeEnv env_snapshot;
  };

  struct QuoteSlot {
    int id;
    int level;
    std::vector<PendingEntry> phase1;
    std::vector<SpliceEnvEntry> extra;
  };

  Checked check_ident(const EIdent& id, const TypeEnv& env, int level,
                      Span span) {
    if (const TValBind* bind = lookup_val(env, id.name)) {
      if (bind->level != level) {
        fail_stage(Phase::Typecheck, "StageError",
                   "variable '" + id.name + "' is bound at level " +
                       std::to_string(bind->level) + " but used at level " +
                       std::to_string(level),
                   span, bind->level, level);
      }
      return {bind->type, c_var(id.name)};
    }
    const GlobalInfo* global = theory_.lookup_global(id.name);
    if (!global) {
      if (future_globals_.count(id.name)) {
        fail(Phase::Typecheck, "ForwardGlobalReference",
             "global '" + id.name +
                 "' is declared later; forward references are not allowed",
             span);
      }
      fail(Phase::Typecheck, "UnboundVariable",
           "variable '" + id.name + "' is not in scope", span);
    }
    // Instantiate: binders become fresh metavariables and qualifiers become
    // evidence holes to be solved in phase two.
    std::map<std::string, TypePtr> theta;
    CoreExprPtr core = c_global(id.name);
    for (const auto& b : global->sig.binders) {
      TypePtr m = unifier_.fresh_meta();
      theta[b] = m;
      core = c_tyapp(core, m);
    }
    auto instantiate = [&](const TypePtr& t) {
      TypePtr out = t;
      for (const auto& [name, m] : theta) out = subst_tyvar(out, name, m);
      return out;
    };
    for (const auto& q : global->sig.qualifiers) {
      Constraint c{q.depth, q.cls, instantiate(q.arg)};
      int hole = next_hole_++;
      wanteds_.push_back(PendingWanted{hole, c, level, env, slot_stack_, span});
      core = c_app(core, c_hole(hole));
    }
    return {instantiate(global->sig.mono), core};
  }

  void attach_entry_phase1(PendingEntry entry, int entry_level) {
    for (auto it = slot_stack_.rbegin(); it != slot_stack_.rend(); ++it) {
      if (slots_[*it].level == entry_level) {
        slots_[*it].phase1.push_back(std::move(entry));
        return;
      }
    }
    if (entry_level >= 0) {
      internal_error("splice entry at level >= 0 escaped every quote");
    }
    decl_tsp_phase1_[entry_level].push_back(std::move(entry));
  }

  void attach_entry_phase2(const std::vector<int>& stack, int entry_level,
                           SpliceEnvEntry entry) {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      if (slots_[*it].level == entry_level) {
        slots_[*it].extra.push_back(std::move(entry));
        return;
      }
    }
    internal_error("evidence splice entry escaped every quote");
  }

  std::vector<int> residual_metas(const CoreExprPtr& core,
                                  const TypePtr& result_type) {
    std::vector<int> order;
    std::set<int> seen;
    auto add_type = [&](const TypePtr& t) {
      collect_type_metas_ordered(unifier_.zonk(t), order, seen);
    };
    if (result_type) add_type(result_type);
    scan_core_types(core, add_type);
    for (const auto& w : wanteds_) add_type(w.constraint.arg);
    for (const auto& [lvl, entries] : decl_tsp_phase1_) {
      (void)lvl;
      for (const auto& pe : entries) {
        add_type(pe.type);
        scan_core_types(pe.rhs, add_type);
      }
    }
    return order;
  }

  template <typename F>
  void scan_core_types(const CoreExprPtr& e, F&& add_type) {
    if (auto* l = std::get_if<CLam>(&e->node)) {
      add_type(l->ann);
      scan_core_types(l->body, add_type);
    } else if (auto* a = std::get_if<CApp>(&e->node)) {
      scan_core_types(a->fn, add_type);
      scan_core_types(a->arg, add_type);
    } else if (auto* tl = std::get_if<CTyLam>(&e->node)) {
      scan_core_types(tl->body, add_type);
    } else if (auto* ta = std::get_if<CTyApp>(&e->node)) {
      scan_core_types(ta->fn, add_type);
      add_type(ta->arg);
    } else if (auto* q = std::get_if<CQuote>(&e->node)) {
      scan_core_types(q->body, add_type);
      auto slot_it = quote_slot_of_.find(e.get());
      if (slot_it != quote_slot_of_.end()) {
        for (const auto& pe : slots_[slot_it->second].phase1) {
          add_type(pe.type);
          scan_core_types(pe.rhs, add_type);
        }
      }
    } else if (auto* z = std::get_if<CIfz>(&e->node)) {
      scan_core_types(z->cond, add_type);
      scan_core_types(z->zero, add_type);
      scan_core_types(z->succ, add_type);
    }
  }

  static std::string gen_name(size_t i) {
    std::string name(1, static_cast<char>('a' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    return name;
  }

  std::vector<Given> givens_of(const TypeEnv& env) const {
    std::vector<Given> out;
    for (const auto& bind : env) {
      if (auto* ev = std::get_if<TEvBind>(&bind)) {
        out.push_back(
            Given{ev->name, unifier_.zonk_constraint(ev->constraint), ev->level});
      }
    }
    return out;
  }

  TypeEnv zonk_env(const TypeEnv& env) const {
    TypeEnv out;
    for (const auto& bind : env) {
      if (auto* v = std::get_if<TValBind>(&bind)) {
        out.push_back(TValBind{v->name, unifier_.zonk(v->type), v->level});
      } else if (auto* ev = std::get_if<TEvBind>(&bind)) {
        out.push_back(
            TEvBind{ev->name, unifier_.zonk_constraint(ev->constraint), ev->level});
      } else {
        out.push_back(bind);
      }
    }
    return out;
  }

  // The core environment recorded on a splice entry: the generalization
  // prefix (for main), then the elaborated snapshot of the typing
  // environment at the originating splice or constraint.
  CoreEnv final_delta(const TypeEnv& snapshot, const Finished& fin) const {
    CoreEnv out;
    for (const auto& b : fin.gen_binders) out.push_back(CTyVarBind{b});
    for (size_t i = 0; i < fin.abstracted.size(); ++i) {
      out.push_back(CValBind{
          fin.abstracted_names[i],
          form_constraint(theory_, fin.abstracted[i], decl_span_), 0});
    }
    CoreEnv snap = elab_env(theory_, zonk_env(snapshot));
    out.insert(out.end(), snap.begin(), snap.end());
    return out;
  }

  void solve_wanteds(const FinishOptions& opts, Finished& fin) {
    for (const auto& w : wanteds_) {
      Constraint c = unifier_.zonk_constraint(w.constraint);
      std::vector<Given> givens;
      for (size_t i = 0; i < fin.abstracted.size(); ++i) {
        givens.push_back(Given{fin.abstracted_names[i], fin.abstracted[i], 0});
      }
      std::vector<Given> local = givens_of(w.env_snapshot);
      givens.insert(givens.end(), local.begin(), local.end());
      CoreEnv delta = final_delta(w.env_snapshot, fin);
      EntailOutcome outcome = entail(theory_, fresh_, givens, delta, c, w.level);
      if (auto* failure = std::get_if<EntailFailure>(&outcome)) {
        int norm = normalized_level(c, w.level);
        if (!opts.generalize || norm < 0) {
          fail(Phase::Typecheck, "NoEvidence",
               no_evidence_message(c, w.level, *failure), w.span);
        }
        // Abstract the unsolved constraint as a qualifier; the wanted then
        // follows from the new level-0 given by a level adjustment.
        Constraint abstracted{norm, c.cls, c.arg};
        std::string name = fresh_.fresh_ev();
        fin.abstracted.push_back(abstracted);
        fin.abstracted_names.push_back(name);
        givens.insert(givens.begin(), Given{name, abstracted, 0});
        delta = final_delta(w.env_snapshot, fin);
        outcome = entail(theory_, fresh_, givens, delta, c, w.level);
        if (std::holds_alternative<EntailFailure>(outcome)) {
          internal_error("abstracted constraint still unsolvable");
        }
      }
      auto& success = std::get<EntailSuccess>(outcome);
      hole_solutions_[w.hole_id] = success.evidence;
      for (auto& le : success.escaping) {
        attach_entry_phase2(w.slot_stack, le.level, std::move(le.entry));
      }
    }
  }

  TypePtr zonk_checked(const TypePtr& t) {
    TypePtr z = unifier_.zonk(t);
    if (contains_meta(z)) ambiguous_ = true;
    return z;
  }

  CoreExprPtr rebuild(const CoreExprPtr& e, const Finished& fin) {
    if (auto* h = std::get_if<CEvHole>(&e->node)) {
      auto it = hole_solutions_.find(h->id);
      if (it == hole_solutions_.end()) {
        internal_error("unsolved evidence hole survived constraint solving");
      }
      return it->second;
    }
    if (auto* l = std::get_if<CLam>(&e->node)) {
      return c_lam(l->var, zonk_checked(l->ann), rebuild(l->body, fin));
    }
    if (auto* a = std::get_if<CApp>(&e->node)) {
      return c_app(rebuild(a->fn, fin), rebuild(a->arg, fin));
    }
    if (auto* tl = std::get_if<CTyLam>(&e->node)) {
      return c_tylam(tl->var, rebuild(tl->body, fin));
    }
    if (auto* ta = std::get_if<CTyApp>(&e->node)) {
      return c_tyapp(rebuild(ta->fn, fin), zonk_checked(ta->arg));
    }
    if (auto* z = std::get_if<CIfz>(&e->node)) {
      return c_ifz(rebuild(z->cond, fin), rebuild(z->zero, fin),
                   rebuild(z->succ, fin));
    }
    if (auto* q = std::get_if<CQuote>(&e->node)) {
      auto slot_it = quote_slot_of_.find(e.get());
      if (slot_it == quote_slot_of_.end()) {
        internal_error("quote node lost its splice-environment slot");
      }
      QuoteSlot& slot = slots_[slot_it->second];
      std::vector<SpliceEnvEntry> entries;
      for (const auto& pe : slot.phase1) {
        entries.push_back(SpliceEnvEntry{final_delta(pe.env_snapshot, fin),
                                         pe.name, zonk_checked(pe.type),
                                         rebuild(pe.rhs, fin)});
      }
      for (const auto& extra : slot.extra) entries.push_back(extra);
      return c_quote(rebuild(q->body, fin), std::move(entries));
    }
    return e;
  }

  const Theory& theory_;
  Freshener& fresh_;
  std::set<std::string> future_globals_;
  Unifier unifier_;
  std::vector<QuoteSlot> slots_;
  std::vector<int> slot_stack_;
  std::map<const CoreExpr*, int> quote_slot_of_;
  std::vector<PendingWanted> wanteds_;
  std::map<int, std::vector<PendingEntry>> decl_tsp_phase1_;
  std::map<int, CoreExprPtr> hole_solutions_;
  int next_hole_ = 0;
  bool ambiguous_ = false;
  Span decl_span_;
};

// ---- program-level driver ---------------------------------------------------

class ProgramChecker {
 public:
  explicit ProgramChecker(const SourceProgram& src) : src_(src) {
    theory_.globals = builtin_globals();
    for (const auto& g : theory_.globals) global_names_.insert(g.name);
  }

  CheckResult run() {
    for (size_t i = 0; i < src_.decls.size(); ++i) {
      std::set<std::string> future = future_names(i + 1);
      const SrcDecl& d = src_.decls[i];
      if (auto* def = std::get_if<DefDecl>(&d)) {
        check_def(*def, std::move(future));
      } else if (auto* cls = std::get_if<ClassDecl>(&d)) {
        check_class(*cls);
      } else {
        check_instance(std::get<InstDecl>(d), std::move(future));
      }
    }
    check_main();
    return CheckResult{std::move(program_), std::move(theory_)};
  }

 private:
  std::set<std::string> future_names(size_t from) const {
    std::set<std::string> out;
    for (size_t i = from; i < src_.decls.size(); ++i) {
      if (auto* def = std::get_if<DefDecl>(&src_.decls[i])) {
        out.insert(def->name);
      } else if (auto* cls = std::get_if<ClassDecl>(&src_.decls[i])) {
        out.insert(cls->method);
      }
    }
    return out;
  }

  void require_fresh_global(const std::string& name, Span span) {
    if (global_names_.count(name)) {
      fail(Phase::Typecheck, "DuplicateName",
           "the name '" + name + "' is already defined", span);
    }
  }

  void check_sig_wf(const Scheme& sig, Span span) {
    TypeEnv env;
    for (const auto& b : sig.binders) env.push_back(TTyVarBind{b});
    for (const auto& q : sig.qualifiers) check_constraint_wf(theory_, env, q, span);
    check_type_wf(theory_, env, sig.mono, span);
  }

  void check_def(const DefDecl& def, std::set<std::string> future) {
    require_fresh_global(def.name, def.span);
    check_sig_wf(def.sig, def.span);
    DeclChecker checker(theory_, fresh_, std::move(future), def.span);
    TypeEnv env;
    for (const auto& b : def.sig.binders) env.push_back(TTyVarBind{b});
    std::vector<std::string> ev_names;
    for (const auto& q : def.sig.qualifiers) {
      std::string ev = fresh_.fresh_ev();
      ev_names.push_back(ev);
      env.push_back(TEvBind{ev, q, 0});
    }
    auto checked = checker.check(def.body, env, 0);
    checker.unifier().unify(checked.type, def.sig.mono, def.span);
    auto fin = checker.finish(checked.core, {});
    CoreExprPtr core = fin.core;
    for (size_t i = def.sig.qualifiers.size(); i-- > 0;) {
      core = c_lam(ev_names[i],
                   form_constraint(theory_, def.sig.qualifiers[i], def.span),
                   core);
    }
    for (size_t i = def.sig.binders.size(); i-- > 0;) {
      core = c_tylam(def.sig.binders[i], core);
    }
    emit_spdefs(fin.spdefs);
    program_.decls.push_back(
        CoreDef{def.name, form_scheme(theory_, def.sig, def.span), core});
    theory_.globals.push_back(GlobalInfo{def.name, def.sig});
    global_names_.insert(def.name);
  }

  void check_class(const ClassDecl& cls) {
    if (theory_.classes.count(cls.name)) {
      fail(Phase::Typecheck, "DuplicateName",
           "class '" + cls.name + "' is already defined", cls.span);
    }
    require_fresh_global(cls.method, cls.span);
    {
      TypeEnv env;
      env.push_back(TTyVarBind{cls.tyvar});
      for (const auto& b : cls.sig.binders) env.push_back(TTyVarBind{b});
      for (const auto& q : cls.sig.qualifiers) {
        check_constraint_wf(theory_, env, q, cls.span);
      }
      check_type_wf(theory_, env, cls.sig.mono, cls.span);
    }
    theory_.classes[cls.name] =
        ClassInfo{cls.name, cls.tyvar, cls.method, cls.sig, cls.span};

    // Method selector: evidence for the class constraint is the method value
    // itself, so the selector is an identity function on evidence.
    Scheme selector;
    selector.binders.push_back(cls.tyvar);
    selector.binders.insert(selector.binders.end(), cls.sig.binders.begin(),
                            cls.sig.binders.end());
    selector.qualifiers.push_back(Constraint{0, cls.name, t_var(cls.tyvar)});
    selector.qualifiers.insert(selector.qualifiers.end(),
                               cls.sig.qualifiers.begin(),
                               cls.sig.qualifiers.end());
    selector.mono = cls.sig.mono;

    TypePtr ev_type = form_constraint(
        theory_, Constraint{0, cls.name, t_var(cls.tyvar)}, cls.span);
    std::string ev = fresh_.fresh_ev();
    CoreExprPtr body = c_tylam(cls.tyvar, c_lam(ev, ev_type, c_var(ev)));
    program_.decls.push_back(
        CoreDef{cls.method, form_scheme(theory_, selector, cls.span), body});
    theory_.globals.push_back(GlobalInfo{cls.method, selector});
    global_names_.insert(cls.method);
  }

  static std::string mangle_type(const TypePtr& t) {
    if (auto* b = std::get_if<TyBase>(&t->node)) return b->name;
    if (auto* v = std::get_if<TyVar>(&t->node)) {
      std::string n = v->name;
      n[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(n[0])));
      return n;
    }
    if (auto* l = std::get_if<TyList>(&t->node)) {
      return "List" + mangle_type(l->elem);
    }
    if (auto* p = std::get_if<TyPair>(&t->node)) {
      return "Pair" + mangle_type(p->first) + mangle_type(p->second);
    }
    if (auto* c = std::get_if<TyCode>(&t->node)) {
      return "Code" + mangle_type(c->body);
    }
    if (auto* r = std::get_if<TyArrow>(&t->node)) {
      return "Fn" + mangle_type(r->dom) + mangle_type(r->cod);
    }
    return "T";
  }

  static std::string head_constructor(const TypePtr& t) {
    if (std::get_if<TyVar>(&t->node)) return "a type variable";
    if (auto* b = std::get_if<TyBase>(&t->node)) return b->name;
    if (std::get_if<TyList>(&t->node)) return "List";
    if (std::get_if<TyPair>(&t->node)) return "Pair";
    if (std::get_if<TyCode>(&t->node)) return "Code";
    if (std::get_if<TyArrow>(&t->node)) return "a function type";
    return "an unknown constructor";
  }

  void check_instance(const InstDecl& inst, std::set<std::string> future) {
    const ClassInfo* cls = theory_.lookup_class(inst.cls);
    if (!cls) {
      fail(Phase::Typecheck, "UnknownClass", "unknown class '" + inst.cls + "'",
           inst.span);
    }
    if (inst.method != cls->method) {
      fail(Phase::Typecheck, "MethodSignatureMismatch",
           "instance of class '" + inst.cls + "' must define method '" +
               cls->method + "', found '" + inst.method + "'",
           inst.span);
    }
    for (const auto& ax : theory_.axioms) {
      if (ax.cls == inst.cls &&
          head_constructor(ax.head) == head_constructor(inst.head)) {
        fail(Phase::Typecheck, "OverlappingInstance",
             "overlapping instances for class '" + inst.cls + "' at head " +
                 head_constructor(inst.head),
             inst.span);
      }
    }
    // Instance binders are the free variables of the head type, in
    // first-occurrence order.
    std::vector<std::string> binders;
    {
      std::set<std::string> seen;
      collect_binders(inst.head, binders, seen);
    }
    TypeEnv binder_env;
    for (const auto& b : binders) binder_env.push_back(TTyVarBind{b});
    for (const auto& c : inst.context) {
      check_constraint_wf(theory_, binder_env, c, inst.span);
    }

    std::string ev_name = "ev" + inst.cls + mangle_type(inst.head);
    if (global_names_.count(ev_name) || is_reserved_ident(ev_name)) {
      ev_name = fresh_.fresh_ev();
    }

    Scheme method_sig = subst_in_scheme(cls->sig, cls->tyvar, inst.head);
    TypePtr method_type = form_scheme(theory_, method_sig, inst.span);

    DeclChecker checker(theory_, fresh_, std::move(future), inst.span);
    TypeEnv env = binder_env;
    std::vector<std::string> ctx_names;
    for (const auto& c : inst.context) {
      std::string ev = fresh_.fresh_ev();
      ctx_names.push_back(ev);
      env.push_back(TEvBind{ev, c, 0});
    }
    // While the body is being checked, evidence for the instance's own
    // constraint is in scope as a local binding; the recursion is tied off
    // with fix below when the body actually uses it.
    std::string self_name = fresh_.fresh_ev();
    env.push_back(TEvBind{self_name, Constraint{0, inst.cls, inst.head}, 0});
    std::vector<std::string> sig_ev_names;
    for (const auto& b : method_sig.binders) env.push_back(TTyVarBind{b});
    for (const auto& q : method_sig.qualifiers) {
      std::string ev = fresh_.fresh_ev();
      sig_ev_names.push_back(ev);
      env.push_back(TEvBind{ev, q, 0});
    }

    DeclChecker::Finished fin;
    CoreExprPtr body_core;
    try {
      auto checked = checker.check(inst.body, env, 0);
      checker.unifier().unify(checked.type, method_sig.mono, inst.span);
      fin = checker.finish(checked.core, {});
      body_core = fin.core;
    } catch (CompileError& err) {
      if (err.diag.code == "UnificationError") {
        fail(Phase::Typecheck, "MethodSignatureMismatch",
             "instance method body does not match the class signature: " +
                 err.diag.message,
             inst.span);
      }
      throw;
    }

    for (size_t i = method_sig.qualifiers.size(); i-- > 0;) {
      body_core =
          c_lam(sig_ev_names[i],
                form_constraint(theory_, method_sig.qualifiers[i], inst.span),
                body_core);
    }
    for (size_t i = method_sig.binders.size(); i-- > 0;) {
      body_core = c_tylam(method_sig.binders[i], body_core);
    }

    bool needs_fix =
        !fin.spdefs.empty() || expr_mentions_var(body_core, self_name);
    for (const auto& d : fin.spdefs) {
      if (auto* sp = std::get_if<CoreSpDef>(&d)) {
        if (expr_mentions_var(sp->body, self_name)) needs_fix = true;
      }
    }
    if (needs_fix) {
      auto* arrow = std::get_if<TyArrow>(&method_type->node);
      if (!arrow) {
        fail(Phase::Typecheck, "RecursiveEvidence",
             "instance evidence for '" +
                 pretty_constraint(Constraint{0, inst.cls, inst.head}) +
                 "' is recursive but its method type is not a function type",
             inst.span);
      }
      body_core =
          c_app(c_tyapp(c_tyapp(c_global("fix"), arrow->dom), arrow->cod),
                c_lam(self_name, method_type, body_core));
    }
    for (size_t i = inst.context.size(); i-- > 0;) {
      body_core = c_lam(ctx_names[i],
                        form_constraint(theory_, inst.context[i], inst.span),
                        body_core);
    }
    for (size_t i = binders.size(); i-- > 0;) {
      body_core = c_tylam(binders[i], body_core);
    }

    Scheme ev_scheme{binders, inst.context,
                     form_constraint(theory_,
                                     Constraint{0, inst.cls, inst.head},
                                     inst.span)};
    emit_spdefs(fin.spdefs);
    program_.decls.push_back(
        CoreDef{ev_name, form_scheme(theory_, ev_scheme, inst.span), body_core});
    theory_.axioms.push_back(
        AxiomInfo{ev_name, binders, inst.context, inst.cls, inst.head, inst.span});
    theory_.globals.push_back(GlobalInfo{ev_name, ev_scheme});
    global_names_.insert(ev_name);
  }

  static void collect_binders(const TypePtr& t, std::vector<std::string>& out,
                              std::set<std::string>& seen) {
    if (auto* v = std::get_if<TyVar>(&t->node)) {
      if (seen.insert(v->name).second) out.push_back(v->name);
      return;
    }
    if (auto* l = std::get_if<TyList>(&t->node)) {
      collect_binders(l->elem, out, seen);
    } else if (auto* p = std::get_if<TyPair>(&t->node)) {
      collect_binders(p->first, out, seen);
      collect_binders(p->second, out, seen);
    } else if (auto* r = std::get_if<TyArrow>(&t->node)) {
      collect_binders(r->dom, out, seen);
      collect_binders(r->cod, out, seen);
    } else if (auto* c = std::get_if<TyCode>(&t->node)) {
      collect_binders(c->body, out, seen);
    }
  }

  void check_main() {
    DeclChecker checker(theory_, fresh_, {}, src_.main_span);
    auto checked = checker.check(src_.main, TypeEnv{}, 0);
    DeclChecker::FinishOptions opts;
    opts.generalize = true;
    opts.result_type = checked.type;
    auto fin = checker.finish(checked.core, opts);
    CoreExprPtr core = fin.core;
    for (size_t i = fin.abstracted.size(); i-- > 0;) {
      core = c_lam(fin.abstracted_names[i],
                   form_constraint(theory_, fin.abstracted[i], src_.main_span),
                   core);
    }
    for (size_t i = fin.gen_binders.size(); i-- > 0;) {
      core = c_tylam(fin.gen_binders[i], core);
    }
    Scheme main_scheme{fin.gen_binders, fin.abstracted,
                       checker.unifier().zonk(checked.type)};
    emit_spdefs(fin.spdefs);
    program_.main = core;
    program_.main_type = form_scheme(theory_, main_scheme, src_.main_span);
  }

  void emit_spdefs(const std::vector<CoreDecl>& spdefs) {
    for (const auto& d : spdefs) program_.decls.push_back(d);
  }

  const SourceProgram& src_;
  Theory theory_;
  Freshener fresh_;
  CoreProgram program_;
  std::set<std::string> global_names_;
};

}  // namespace

CheckResult check_program(const SourceProgram& src) {
  return ProgramChecker(src).run();
}

}  // namespace stagec
