#include "support/entail_oracle.hpp"

#include <map>
#include <queue>
#include <set>
#include <tuple>

namespace stagec::testing {

namespace {

// Independent one-way matcher: binds `binders` occurring in `pattern`
// against `subject`, requiring consistent bindings.  Non-binder type
// variables in the pattern only match themselves.
bool match_pattern(const TypePtr& pattern, const TypePtr& subject,
                   const std::vector<std::string>& binders,
                   std::map<std::string, TypePtr>& theta) {
  if (auto* v = std::get_if<TyVar>(&pattern->node)) {
    for (const auto& b : binders) {
      if (b == v->name) {
        auto it = theta.find(v->name);
        if (it != theta.end()) return type_equal(it->second, subject);
        theta[v->name] = subject;
        return true;
      }
    }
    auto* sv = std::get_if<TyVar>(&subject->node);
    return sv && sv->name == v->name;
  }
  if (pattern->node.index() != subject->node.index()) return false;
  if (auto* b = std::get_if<TyBase>(&pattern->node)) {
    return b->name == std::get<TyBase>(subject->node).name;
  }
  if (auto* l = std::get_if<TyList>(&pattern->node)) {
    return match_pattern(l->elem, std::get<TyList>(subject->node).elem,
                         binders, theta);
  }
  if (auto* p = std::get_if<TyPair>(&pattern->node)) {
    auto& ps = std::get<TyPair>(subject->node);
    return match_pattern(p->first, ps.first, binders, theta) &&
           match_pattern(p->second, ps.second, binders, theta);
  }
  if (auto* r = std::get_if<TyArrow>(&pattern->node)) {
    auto& rs = std::get<TyArrow>(subject->node);
    return match_pattern(r->dom, rs.dom, binders, theta) &&
           match_pattern(r->cod, rs.cod, binders, theta);
  }
  if (auto* c = std::get_if<TyCode>(&pattern->node)) {
    return match_pattern(c->body, std::get<TyCode>(subject->node).body,
                         binders, theta);
  }
  return false;
}

}  // namespace

bool oracle_entails(const Theory& theory, const std::vector<Given>& givens,
                    const Constraint& wanted, int level, int max_depth) {
  // Breadth-first search over goal states.  The class and argument type of
  // the goal never change (no rule rewrites them); only the code-modality
  // depth and the level move, so a state is a (depth, level) pair:
  //
  //   C_Local  closes a goal that coincides with a given exactly (same
  //            class, same argument, same depth, same level);
  //   C_Global closes a depth-0 goal whose argument matches the head of a
  //            context-free axiom, at any level;
  //   C_Incr   reduces (d, n) to (d - 1, n + 1) when d > 0 (quoting);
  //   C_Decr   reduces (d, n) to (d + 1, n - 1) (splicing).
  //
  // Each rule application costs one unit of derivation depth; closing a
  // goal counts as an application too, so a bare C_Local is depth 1.
  std::set<std::pair<int, int>> visited;
  std::queue<std::tuple<int, int, int>> queue;  // depth, level, applications used
  queue.emplace(wanted.depth, level, 0);
  visited.insert({wanted.depth, level});
  while (!queue.empty()) {
    auto [d, n, used] = queue.front();
    queue.pop();
    if (used + 1 > max_depth) continue;  // no rule application left
    for (const auto& g : givens) {
      if (g.constraint.cls == wanted.cls &&
          type_equal(g.constraint.arg, wanted.arg) &&
          g.constraint.depth == d && g.level == n) {
        return true;
      }
    }
    if (d == 0) {
      for (const auto& ax : theory.axioms) {
        if (ax.cls != wanted.cls || !ax.context.empty()) continue;
        std::map<std::string, TypePtr> theta;
        if (match_pattern(ax.head, wanted.arg, ax.binders, theta)) return true;
      }
    }
    if (d > 0 && visited.insert({d - 1, n + 1}).second) {
      queue.emplace(d - 1, n + 1, used + 1);
    }
    if (visited.insert({d + 1, n - 1}).second) {
      queue.emplace(d + 1, n - 1, used + 1);
    }
  }
  return false;
}

}  // namespace stagec::testing
