#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stagec/env.hpp"
#include "stagec/types.hpp"

namespace stagec {

// Runtime behaviour classification of a built-in global.
struct BuiltinInfo {
  std::string name;
  Scheme sig;
  int arity;         // number of term arguments consumed by a reduction
  bool constructor;  // saturated applications are values (no reduction)
};

const std::vector<BuiltinInfo>& builtins();
const BuiltinInfo* lookup_builtin(const std::string& name);

// The builtins as typing-theory globals.
std::vector<GlobalInfo> builtin_globals();

}  // namespace stagec
