#pragma once

// Random entailment-instance generator shared by the property test and the
// acceptance suite.  Instances stay inside the bounds the solver is checked
// against: at most 4 givens, code-modality depth at most 3, levels in
// [-2, 2], and at most 3 context-free axioms over the classes K1..K3.

#include <random>
#include <string>
#include <vector>

#include "stagec/entail.hpp"
#include "stagec/env.hpp"
#include "stagec/types.hpp"

namespace stagec::testing {

struct EntailInstance {
  Theory theory;  // axioms only; no globals or classes are consulted
  std::vector<Given> givens;
  Constraint wanted;
  int level = 0;
};

class InstanceGen {
 public:
  explicit InstanceGen(unsigned seed) : rng_(seed) {}

  EntailInstance next() {
    EntailInstance inst;
    // Register the classes so evidence types can be formed for any
    // constraint the solver needs to materialize along the way.
    for (int i = 1; i <= 3; ++i) {
      std::string name = "K" + std::to_string(i);
      ClassInfo info;
      info.name = name;
      info.tyvar = "c";
      info.method = "m" + std::to_string(i);
      info.sig = Scheme{{}, {}, t_arrow(t_var("c"), t_string())};
      inst.theory.classes.emplace(name, std::move(info));
    }
    int axiom_count = pick(0, 3);
    for (int i = 0; i < axiom_count; ++i) {
      AxiomInfo ax;
      ax.ev_name = "evAx" + std::to_string(i);
      ax.cls = random_class();
      ax.head = random_head(ax.binders);
      inst.theory.axioms.push_back(std::move(ax));
    }
    int given_count = pick(0, 4);
    for (int i = 0; i < given_count; ++i) {
      Given g;
      g.ev_name = "g" + std::to_string(i);
      g.constraint = Constraint{pick(0, 3), random_class(), random_arg()};
      g.level = pick(-2, 2);
      inst.givens.push_back(std::move(g));
    }
    // Half the time aim the wanted constraint at an existing given or axiom
    // so that solvable and unsolvable instances both occur often; depth and
    // level are still drawn independently, exercising the adjustment rules.
    std::string cls = random_class();
    TypePtr arg = random_arg();
    if (pick(0, 1) == 1) {
      int total = given_count + axiom_count;
      if (total > 0) {
        int i = pick(0, total - 1);
        if (i < given_count) {
          cls = inst.givens[i].constraint.cls;
          arg = inst.givens[i].constraint.arg;
        } else {
          const AxiomInfo& ax = inst.theory.axioms[i - given_count];
          cls = ax.cls;
          arg = instantiate_head(ax);
        }
      }
    }
    inst.wanted = Constraint{pick(0, 3), std::move(cls), std::move(arg)};
    inst.level = pick(-2, 2);
    return inst;
  }

 private:
  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  std::string random_class() { return "K" + std::to_string(pick(1, 3)); }

  TypePtr random_leaf() {
    switch (pick(0, 4)) {
      case 0: return t_int();
      case 1: return t_bool();
      case 2: return t_string();
      case 3: return t_var("a");
      default: return t_var("b");
    }
  }

  TypePtr random_arg(int fuel = 2) {
    if (fuel == 0 || pick(0, 2) == 0) return random_leaf();
    switch (pick(0, 3)) {
      case 0: return t_list(random_arg(fuel - 1));
      case 1: return t_code(random_arg(fuel - 1));
      case 2: return t_pair(random_arg(fuel - 1), random_arg(fuel - 1));
      default: return t_arrow(random_arg(fuel - 1), random_arg(fuel - 1));
    }
  }

  // Instance heads are constructor- or base-headed patterns whose type
  // variables are all instance binders, as declaration checking enforces
  // for source programs.
  TypePtr random_head(std::vector<std::string>& binders) {
    auto slot = [&](const std::string& name) -> TypePtr {
      if (pick(0, 1) == 1) {
        binders.push_back(name);
        return t_var(name);
      }
      return random_leaf_ground();
    };
    switch (pick(0, 6)) {
      case 0: return t_int();
      case 1: return t_bool();
      case 2: return t_string();
      case 3: return t_list(slot("x"));
      case 4: return t_code(slot("x"));
      case 5: return t_pair(slot("x"), slot("y"));
      default: return t_arrow(slot("x"), slot("y"));
    }
  }

  TypePtr random_leaf_ground() {
    switch (pick(0, 2)) {
      case 0: return t_int();
      case 1: return t_bool();
      default: return t_string();
    }
  }

  // A concrete argument the axiom's head matches: binders are filled with
  // random ground leaves.
  TypePtr instantiate_head(const AxiomInfo& ax) {
    TypePtr arg = ax.head;
    for (const auto& b : ax.binders) {
      arg = subst_tyvar(arg, b, random_leaf_ground());
    }
    return arg;
  }

  std::mt19937 rng_;
};

}  // namespace stagec::testing
