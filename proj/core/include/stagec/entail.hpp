#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stagec/core_ir.hpp"
#include "stagec/env.hpp"

namespace stagec {

// Deterministic source of generated names. One instance per pipeline run so
// output is reproducible.
struct Freshener {
  int sp = 0;
  int ev = 0;
  std::string fresh_sp() { return "sp" + std::to_string(sp++); }
  std::string fresh_ev() { return "ev" + std::to_string(ev++); }
};

// Evidence available while solving: a binding ev : constraint at a level.
struct Given {
  std::string ev_name;
  Constraint constraint;
  int level = 0;
};

// A splice-environment entry produced by a level adjustment that was not
// captured inside evidence built by this entailment; the caller must attach
// it to the enclosing quote (level >= 0) or the declaration's top-level
// splice environment (level < 0).
struct LeveledEntry {
  int level;
  SpliceEnvEntry entry;
};

struct EntailSuccess {
  CoreExprPtr evidence;
  std::vector<LeveledEntry> escaping;
};

struct EntailFailure {
  // Normalized level of some given with a matching base constraint, when one
  // exists; used for near-miss diagnostics.
  std::optional<int> have_level;
};

using EntailOutcome = std::variant<EntailSuccess, EntailFailure>;

inline int normalized_level(const Constraint& c, int level) {
  return level + c.depth;
}

// Solves `wanted` at `level` against local givens (searched newest-first)
// and the theory's instance axioms (searched in declaration order).
// `delta` is recorded on any splice-environment entries created by level
// adjustments. Throws CompileError (InstanceSearchDepthExceeded) when the
// instance search exceeds max_axiom_depth nested axiom applications.
EntailOutcome entail(const Theory& theory, Freshener& fresh,
                     const std::vector<Given>& givens, const CoreEnv& delta,
                     const Constraint& wanted, int level,
                     int max_axiom_depth = 32);

// Renders the standard failure message for an unsolved constraint.
std::string no_evidence_message(const Constraint& wanted, int level,
                                const EntailFailure& failure);

}  // namespace stagec
