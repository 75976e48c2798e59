#include <doctest.h>

#include "stagec/diagnostics.hpp"
#include "stagec/forms.hpp"
#include "stagec/pretty.hpp"
#include "stagec/types.hpp"
#include "stagec/unify.hpp"

using namespace stagec;

namespace {

Theory show_theory() {
  Theory theory;
  ClassInfo info;
  info.name = "Show";
  info.tyvar = "a";
  info.method = "show";
  info.sig = Scheme{{}, {}, t_arrow(t_var("a"), t_string())};
  theory.classes.emplace("Show", info);
  return theory;
}

}  // namespace

TEST_CASE("structural equality vs alpha equality") {
  TypePtr fa = t_forall("a", t_arrow(t_var("a"), t_var("a")));
  TypePtr fb = t_forall("b", t_arrow(t_var("b"), t_var("b")));
  CHECK(type_equal(fa, fa));
  CHECK_FALSE(type_equal(fa, fb));
  CHECK(alpha_equal(fa, fb));
  // Free variables compare by name under both relations.
  CHECK_FALSE(alpha_equal(t_var("a"), t_var("b")));
  CHECK(alpha_equal(t_list(t_var("a")), t_list(t_var("a"))));
  CHECK_FALSE(alpha_equal(t_forall("a", t_var("x")), t_forall("b", t_var("y"))));
}

TEST_CASE("free type variables and metas") {
  TypePtr t = t_forall("a", t_pair(t_var("a"), t_code(t_var("b"))));
  auto fv = free_tyvars(t);
  CHECK(fv == std::set<std::string>{"b"});
  CHECK_FALSE(contains_meta(t));
  CHECK(contains_meta(t_list(t_meta(3))));
  std::set<int> ms;
  collect_metas(t_arrow(t_meta(1), t_pair(t_meta(2), t_meta(1))), ms);
  CHECK(ms == std::set<int>{1, 2});
}

TEST_CASE("type substitution avoids capture") {
  // [b/a](forall b . a -> b): the binder must be renamed away from b.
  TypePtr t = t_forall("b", t_arrow(t_var("a"), t_var("b")));
  TypePtr got = subst_tyvar(t, "a", t_var("b"));
  CHECK(alpha_equal(got, t_forall("c", t_arrow(t_var("b"), t_var("c")))));
  // Substituting under an unrelated binder keeps it.
  TypePtr u = subst_tyvar(t_forall("c", t_var("a")), "a", t_int());
  CHECK(type_equal(u, t_forall("c", t_int())));
  // A shadowing binder stops the substitution.
  TypePtr s = subst_tyvar(t_forall("a", t_var("a")), "a", t_int());
  CHECK(type_equal(s, t_forall("a", t_var("a"))));
}

TEST_CASE("unification solves metas through constructors") {
  Unifier u;
  TypePtr m1 = u.fresh_meta();
  TypePtr m2 = u.fresh_meta();
  u.unify(t_arrow(m1, t_list(m2)), t_arrow(t_int(), t_list(t_bool())), Span{});
  CHECK(type_equal(u.zonk(m1), t_int()));
  CHECK(type_equal(u.zonk(m2), t_bool()));

  // Transitive solutions resolve when zonking.
  Unifier v;
  TypePtr a = v.fresh_meta();
  TypePtr b = v.fresh_meta();
  v.unify(a, b, Span{});
  v.unify(b, t_string(), Span{});
  CHECK(type_equal(v.zonk(a), t_string()));
  CHECK(type_equal(v.zonk(t_pair(a, b)), t_pair(t_string(), t_string())));
}

TEST_CASE("unification failures: clash and occurs check") {
  Unifier u;
  try {
    u.unify(t_int(), t_bool(), Span{});
    FAIL("clash unified");
  } catch (const CompileError& e) {
    CHECK(e.diag.phase == Phase::Typecheck);
    CHECK(e.diag.code == "UnificationError");
  }
  Unifier v;
  TypePtr m = v.fresh_meta();
  CHECK_THROWS_AS(v.unify(m, t_list(m), Span{}), CompileError);
  Unifier w;
  CHECK_THROWS_AS(w.unify(t_code(t_int()), t_int(), Span{}), CompileError);
  CHECK_THROWS_AS(w.unify(t_pair(t_int(), t_int()), t_list(t_int()), Span{}),
                  CompileError);
}

TEST_CASE("zonking constraints") {
  Unifier u;
  TypePtr m = u.fresh_meta();
  u.unify(m, t_list(t_int()), Span{});
  Constraint c{2, "Show", m};
  Constraint z = u.zonk_constraint(c);
  CHECK(z.depth == 2);
  CHECK(z.cls == "Show");
  CHECK(type_equal(z.arg, t_list(t_int())));
}

TEST_CASE("evidence type of a constraint") {
  Theory theory = show_theory();
  // Show Int |- evidence is the instantiated method type.
  TypePtr t0 = form_constraint(theory, Constraint{0, "Show", t_int()}, Span{});
  CHECK(type_equal(t0, t_arrow(t_int(), t_string())));
  // Each code-modality layer wraps the evidence type in Code.
  TypePtr t2 = form_constraint(theory, Constraint{2, "Show", t_int()}, Span{});
  CHECK(type_equal(t2, t_code(t_code(t_arrow(t_int(), t_string())))));
  CHECK_THROWS_AS(
      (void)form_constraint(theory, Constraint{0, "Eq", t_int()}, Span{}),
      CompileError);
}

TEST_CASE("underlying type of a qualified scheme") {
  Theory theory = show_theory();
  Scheme s{{"a"},
           {Constraint{1, "Show", t_var("a")}},
           t_code(t_arrow(t_var("a"), t_string()))};
  TypePtr got = form_scheme(theory, s, Span{});
  TypePtr want = t_forall(
      "a", t_arrow(t_code(t_arrow(t_var("a"), t_string())),
                   t_code(t_arrow(t_var("a"), t_string()))));
  CHECK(type_equal(got, want));
}

TEST_CASE("well-formedness checks") {
  Theory theory = show_theory();
  TypeEnv env;
  env.push_back(TTyVarBind{"a"});
  check_type_wf(theory, env, t_list(t_var("a")), Span{});  // no throw
  try {
    check_type_wf(theory, env, t_var("zz"), Span{});
    FAIL("unbound type variable accepted");
  } catch (const CompileError& e) {
    CHECK(e.diag.code == "UnboundTypeVariable");
  }
  check_constraint_wf(theory, env, Constraint{0, "Show", t_var("a")}, Span{});
  try {
    check_constraint_wf(theory, env, Constraint{0, "Eq", t_var("a")}, Span{});
    FAIL("unknown class accepted");
  } catch (const CompileError& e) {
    CHECK(e.diag.code == "UnknownClass");
  }
}

TEST_CASE("pretty types use minimal parentheses") {
  CHECK(pretty_type(t_arrow(t_arrow(t_int(), t_int()), t_int())) ==
        "(Int -> Int) -> Int");
  CHECK(pretty_type(t_arrow(t_int(), t_arrow(t_int(), t_int()))) ==
        "Int -> Int -> Int");
  CHECK(pretty_type(t_list(t_code(t_var("a")))) == "List (Code a)");
  CHECK(pretty_type(t_code(t_arrow(t_var("a"), t_string()))) ==
        "Code (a -> String)");
  CHECK(pretty_type(t_pair(t_arrow(t_int(), t_int()), t_list(t_int()))) ==
        "Pair (Int -> Int) (List Int)");
  CHECK(pretty_type(t_forall("a", t_arrow(t_var("a"), t_var("a")))) ==
        "forall a . a -> a");
  CHECK(pretty_constraint(Constraint{1, "Show", t_var("a")}) ==
        "CodeC (Show a)");
  CHECK(pretty_constraint(Constraint{0, "EqI", t_list(t_int())}) ==
        "EqI (List Int)");
}
