#include "stagec/builtins.hpp"

namespace stagec {

namespace {

Scheme mono(TypePtr t) { return Scheme{{}, {}, std::move(t)}; }

Scheme poly(std::vector<std::string> binders, TypePtr t) {
  return Scheme{std::move(binders), {}, std::move(t)};
}

std::vector<BuiltinInfo> make_builtins() {
  TypePtr a = t_var("a");
  TypePtr b = t_var("b");
  TypePtr i = t_int();
  std::vector<BuiltinInfo> out;
  out.push_back({"add", mono(t_arrow(i, t_arrow(i, i))), 2, false});
  out.push_back({"sub", mono(t_arrow(i, t_arrow(i, i))), 2, false});
  out.push_back({"mul", mono(t_arrow(i, t_arrow(i, i))), 2, false});
  out.push_back({"eqInt", mono(t_arrow(i, t_arrow(i, t_bool()))), 2, false});
  out.push_back({"showInt", mono(t_arrow(i, t_string())), 1, false});
  TypePtr ab = t_arrow(a, b);
  out.push_back(
      {"fix", poly({"a", "b"}, t_arrow(t_arrow(ab, ab), ab)), 1, false});
  out.push_back({"nil", poly({"a"}, t_list(a)), 0, true});
  out.push_back(
      {"cons", poly({"a"}, t_arrow(a, t_arrow(t_list(a), t_list(a)))), 2,
       true});
  out.push_back({"matchList",
                 poly({"a", "b"},
                      t_arrow(t_list(a),
                              t_arrow(b, t_arrow(t_arrow(a, t_arrow(t_list(a), b)),
                                                 b)))),
                 3, false});
  out.push_back(
      {"pair", poly({"a", "b"}, t_arrow(a, t_arrow(b, t_pair(a, b)))), 2,
       true});
  out.push_back({"fstP", poly({"a", "b"}, t_arrow(t_pair(a, b), a)), 1, false});
  out.push_back({"sndP", poly({"a", "b"}, t_arrow(t_pair(a, b), b)), 1, false});
  return out;
}

}  // namespace

const std::vector<BuiltinInfo>& builtins() {
  static const std::vector<BuiltinInfo> table = make_builtins();
  return table;
}

const BuiltinInfo* lookup_builtin(const std::string& name) {
  for (const auto& b : builtins()) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::vector<GlobalInfo> builtin_globals() {
  std::vector<GlobalInfo> out;
  for (const auto& b : builtins()) out.push_back({b.name, b.sig});
  return out;
}

}  // namespace stagec
