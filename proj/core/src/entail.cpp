#include "stagec/entail.hpp"

#include <map>

#include "stagec/forms.hpp"
#include "stagec/pretty.hpp"

namespace stagec {

namespace {

bool match_head(const TypePtr& pattern, const TypePtr& subject,
                const std::vector<std::string>& binders,
                std::map<std::string, TypePtr>& theta) {
  if (auto* v = std::get_if<TyVar>(&pattern->node)) {
    bool is_binder = false;
    for (const auto& b : binders) {
      if (b == v->name) {
        is_binder = true;
        break;
      }
    }
    if (is_binder) {
      auto it = theta.find(v->name);
      if (it != theta.end()) return type_equal(it->second, subject);
      theta[v->name] = subject;
      return true;
    }
    auto* sv = std::get_if<TyVar>(&subject->node);
    return sv && sv->name == v->name;
  }
  if (pattern->node.index() != subject->node.index()) return false;
  if (auto* b = std::get_if<TyBase>(&pattern->node)) {
    return b->name == std::get<TyBase>(subject->node).name;
  }
  if (auto* l = std::get_if<TyList>(&pattern->node)) {
    return match_head(l->elem, std::get<TyList>(subject->node).elem, binders,
                      theta);
  }
  if (auto* p = std::get_if<TyPair>(&pattern->node)) {
    auto& ps = std::get<TyPair>(subject->node);
    return match_head(p->first, ps.first, binders, theta) &&
           match_head(p->second, ps.second, binders, theta);
  }
  if (auto* r = std::get_if<TyArrow>(&pattern->node)) {
    auto& rs = std::get<TyArrow>(subject->node);
    return match_head(r->dom, rs.dom, binders, theta) &&
           match_head(r->cod, rs.cod, binders, theta);
  }
  if (auto* c = std::get_if<TyCode>(&pattern->node)) {
    return match_head(c->body, std::get<TyCode>(subject->node).body, binders,
                      theta);
  }
  return false;
}

class Solver {
 public:
  Solver(const Theory& theory, Freshener& fresh,
         const std::vector<Given>& givens, const CoreEnv& delta, int max_depth)
      : theory_(theory),
        fresh_(fresh),
        givens_(givens),
        delta_(delta),
        max_depth_(max_depth) {}

  std::optional<CoreExprPtr> solve(const Constraint& c, int level, int depth,
                                   std::vector<LeveledEntry>& out) {
    int wanted_norm = normalized_level(c, level);
    // Local givens, newest binding first.
    for (auto it = givens_.rbegin(); it != givens_.rend(); ++it) {
      const Given& g = *it;
      if (g.constraint.cls != c.cls || !type_equal(g.constraint.arg, c.arg)) {
        continue;
      }
      int given_norm = normalized_level(g.constraint, g.level);
      if (given_norm != wanted_norm) {
        if (!have_level_) have_level_ = given_norm;
        continue;
      }
      return adjust_to_given(g, c, level, out);
    }
    // Instance axioms, in declaration order; the first head match is used.
    for (const auto& ax : theory_.axioms) {
      if (ax.cls != c.cls) continue;
      std::map<std::string, TypePtr> theta;
      if (!match_head(ax.head, c.arg, ax.binders, theta)) continue;
      if (depth + 1 > max_depth_) {
        fail(Phase::Typecheck, "InstanceSearchDepthExceeded",
             "instance search depth exceeded (" + std::to_string(max_depth_) +
                 ") while solving " + pretty_constraint(c),
             Span{});
      }
      CoreExprPtr ev = c_global(ax.ev_name);
      for (const auto& b : ax.binders) {
        auto bt = theta.find(b);
        if (bt == theta.end()) {
          fail(Phase::Internal, "InternalError",
               "instance binder '" + b + "' not fixed by head match", Span{});
        }
        ev = c_tyapp(ev, bt->second);
      }
      std::vector<LeveledEntry> sub;
      for (const auto& ctx : ax.context) {
        Constraint inst{ctx.depth, ctx.cls, ctx.arg};
        for (const auto& [name, ty] : theta) {
          inst.arg = subst_tyvar(inst.arg, name, ty);
        }
        auto ctx_ev = solve(inst, wanted_norm, depth + 1, sub);
        if (!ctx_ev) return std::nullopt;
        ev = c_app(ev, *ctx_ev);
      }
      // Strip the code-modality wrappers of the wanted constraint by
      // quoting, capturing entries the subderivations produced at each
      // intermediate level.
      for (int l = wanted_norm - 1; l >= level; --l) {
        std::vector<SpliceEnvEntry> captured;
        std::vector<LeveledEntry> rest;
        for (auto& le : sub) {
          if (le.level == l) {
            captured.push_back(std::move(le.entry));
          } else {
            rest.push_back(std::move(le));
          }
        }
        sub = std::move(rest);
        ev = c_quote(ev, std::move(captured));
      }
      for (auto& le : sub) out.push_back(std::move(le));
      return ev;
    }
    return std::nullopt;
  }

  std::optional<int> have_level() const { return have_level_; }

 private:
  CoreExprPtr adjust_to_given(const Given& g, const Constraint& c, int level,
                              std::vector<LeveledEntry>& out) {
    int k = c.depth - g.constraint.depth;  // equals g.level - level
    if (k >= 0) {
      // The wanted constraint has k more code-modality wrappers: strip them
      // with k nested (empty-environment) quotes around the evidence.
      CoreExprPtr ev = c_var(g.ev_name);
      for (int i = 0; i < k; ++i) ev = c_quote(ev, {});
      return ev;
    }
    // The given has more wrappers: move the evidence up |k| levels via
    // splice-environment entries, one per level from g.level to level-1.
    CoreExprPtr rhs = c_var(g.ev_name);
    for (int l = g.level; l <= level - 1; ++l) {
      Constraint entry_con{c.depth + (level - 1 - l), c.cls, c.arg};
      std::string name = fresh_.fresh_sp();
      SpliceEnvEntry entry{delta_, name,
                           form_constraint(theory_, entry_con, Span{}), rhs};
      out.push_back(LeveledEntry{l, std::move(entry)});
      rhs = c_splice_var(name);
    }
    return rhs;
  }

  const Theory& theory_;
  Freshener& fresh_;
  const std::vector<Given>& givens_;
  const CoreEnv& delta_;
  int max_depth_;
  std::optional<int> have_level_;
};

}  // namespace

EntailOutcome entail(const Theory& theory, Freshener& fresh,
                     const std::vector<Given>& givens, const CoreEnv& delta,
                     const Constraint& wanted, int level, int max_axiom_depth) {
  Solver solver(theory, fresh, givens, delta, max_axiom_depth);
  std::vector<LeveledEntry> out;
  auto ev = solver.solve(wanted, level, 0, out);
  if (!ev) return EntailFailure{solver.have_level()};
  return EntailSuccess{*ev, std::move(out)};
}

std::string no_evidence_message(const Constraint& wanted, int level,
                                const EntailFailure& failure) {
  std::string msg = "no evidence for " + pretty_constraint(wanted) +
                    " at level " + std::to_string(level);
  if (failure.have_level) {
    msg += " (have it at level " + std::to_string(*failure.have_level);
    if (normalized_level(wanted, level) > *failure.have_level) {
      msg += "; consider CodeC";
    }
    msg += ")";
  }
  return msg;
}

}  // namespace stagec
