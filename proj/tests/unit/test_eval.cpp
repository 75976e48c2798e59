#include <doctest.h>

#include <string>
#include <vector>

#include "stagec/core_parser.hpp"
#include "stagec/diagnostics.hpp"
#include "stagec/eval.hpp"
#include "stagec/lint.hpp"
#include "stagec/parser.hpp"
#include "stagec/pretty.hpp"
#include "stagec/typecheck.hpp"

using namespace stagec;

namespace {

StepResult step(const CoreExprPtr& e) {
  auto r = step_expr(e);
  REQUIRE(r.has_value());
  return *r;
}

CoreExprPtr expr(const std::string& text) { return parse_core_expr(text); }

struct Ran {
  CoreExprPtr value;
  long long steps;
  std::vector<std::string> labels;
};

Ran run_core(const std::string& program_text, long long max_steps = 1000000) {
  CoreProgram p = parse_core(program_text);
  Ran ran;
  RunOptions opts;
  opts.max_steps = max_steps;
  opts.trace = [&](long long, const std::string& label, const CoreProgram&) {
    ran.labels.push_back(label);
  };
  RunResult r = run_program(p, opts);
  ran.value = r.value;
  ran.steps = r.steps;
  return ran;
}

}  // namespace

TEST_CASE("values: literals, abstractions, quotes, and builtin spines") {
  CHECK(is_value(c_int(3)));
  CHECK(is_value(c_str("s")));
  CHECK(is_value(c_bool(true)));
  CHECK(is_value(expr("\\x : Int . add x 1")));
  CHECK(is_value(expr("/\\a . \\x : a . x")));
  CHECK(is_value(c_global("add")));
  CHECK(is_value(expr("add 1")));        // partial application
  CHECK_FALSE(is_value(expr("add 1 2")));  // saturated: a redex
  CHECK(is_value(expr("cons <Int> 1 (nil <Int>)")));  // saturated constructor
  CHECK(is_value(expr("pair <Int> <Bool> 1 true")));
  CHECK(is_value(expr("[| add x 1 |]{}")));
  CHECK_FALSE(is_value(expr("(\\x : Int . x) 1")));
  CHECK_FALSE(is_value(expr("(/\\a . \\x : a . x) <Int>")));
  // A quote is a value only once all entry right-hand sides are.
  CHECK(is_value(expr("[| sp0 |]{() |- sp0 : Int = [| 1 |]{}}")));
  CHECK_FALSE(is_value(expr("[| sp0 |]{() |- sp0 : Int = ifz 0 then [| 1 |]{} else [| 2 |]{}}")));
}

TEST_CASE("beta and type-beta steps") {
  StepResult r = step(expr("(\\x : Int . add x x) 2"));
  CHECK(r.label == "DE_Beta");
  CHECK(core_alpha_equal(r.next, expr("add 2 2")));

  StepResult t = step(expr("(/\\a . \\x : a . x) <Int>"));
  CHECK(t.label == "DE_TBeta");
  CHECK(core_alpha_equal(t.next, expr("\\x : Int . x")));
}

TEST_CASE("call-by-value order: function first, then argument") {
  StepResult fn_first = step(expr("((\\f : Int -> Int . f) (\\y : Int . y)) 1"));
  CHECK(fn_first.label == "DE_Beta");
  CHECK(core_alpha_equal(fn_first.next, expr("(\\y : Int . y) 1")));

  StepResult arg_next = step(expr("(\\x : Int . x) ((\\y : Int . y) 2)"));
  CHECK(arg_next.label == "DE_Beta");
  CHECK(core_alpha_equal(arg_next.next, expr("(\\x : Int . x) 2")));
}

TEST_CASE("arithmetic, comparison, and printing deltas") {
  CHECK(core_alpha_equal(step(expr("add 2 3")).next, c_int(5)));
  CHECK(core_alpha_equal(step(expr("sub 2 3")).next, c_int(-1)));
  CHECK(core_alpha_equal(step(expr("mul 4 5")).next, c_int(20)));
  CHECK(core_alpha_equal(step(expr("eqInt 3 3")).next, c_bool(true)));
  CHECK(core_alpha_equal(step(expr("eqInt 3 4")).next, c_bool(false)));
  CHECK(core_alpha_equal(step(expr("showInt 42")).next, c_str("42")));
  CHECK(step(expr("add 2 3")).label == "DE_Delta");
}

TEST_CASE("ifz branches on zero") {
  StepResult z = step(expr("ifz 0 then 10 else 20"));
  CHECK(z.label == "DE_Ifz");
  CHECK(core_alpha_equal(z.next, c_int(10)));
  StepResult s = step(expr("ifz 7 then 10 else 20"));
  CHECK(core_alpha_equal(s.next, c_int(20)));
  // The condition evaluates first.
  StepResult c = step(expr("ifz add 0 0 then 1 else 2"));
  CHECK(c.label == "DE_Delta");
}

TEST_CASE("fix unrolls through an eta-expanded recursive call") {
  CoreExprPtr v = expr("\\g : Int -> Int . \\n : Int . n");
  CoreExprPtr fixed = expr("fix <Int> <Int> (\\g : Int -> Int . \\n : Int . n)");
  StepResult r = step(fixed);
  CHECK(r.label == "DE_Fix");
  CHECK(core_alpha_equal(
      r.next, c_app(v, c_lam("x", t_int(), c_app(fixed, c_var("x"))))));
}

TEST_CASE("list matching consumes the scrutinee first") {
  StepResult nil_case =
      step(expr("matchList <Int> <Int> (nil <Int>) 0 (\\h : Int . \\t : List Int . h)"));
  CHECK(nil_case.label == "DE_Delta");
  CHECK(core_alpha_equal(nil_case.next, c_int(0)));

  StepResult cons_case = step(
      expr("matchList <Int> <Int> (cons <Int> 9 (nil <Int>)) 0 "
           "(\\h : Int . \\t : List Int . h)"));
  CHECK(core_alpha_equal(
      cons_case.next,
      expr("(\\h : Int . \\t : List Int . h) 9 (nil <Int>)")));

  // A non-value scrutinee is reduced before the match fires.
  StepResult busy = step(
      expr("matchList <Int> <Int> (cons <Int> (add 1 2) (nil <Int>)) 0 "
           "(\\h : Int . \\t : List Int . h)"));
  CHECK(busy.label == "DE_Delta");
}

TEST_CASE("pair projections") {
  CHECK(core_alpha_equal(
      step(expr("fstP <Int> <Bool> (pair <Int> <Bool> 1 true)")).next,
      c_int(1)));
  CHECK(core_alpha_equal(
      step(expr("sndP <Int> <Bool> (pair <Int> <Bool> 1 true)")).next,
      c_bool(true)));
}

TEST_CASE("quotes reduce their entry right-hand sides left to right") {
  CoreExprPtr q = expr(
      "[| add sp0 sp1 |]{"
      "() |- sp0 : Int = ifz 0 then [| 1 |]{} else [| 2 |]{} ; "
      "() |- sp1 : Int = ifz 1 then [| 3 |]{} else [| 4 |]{}}");
  StepResult first = step(q);
  CHECK(first.label == "DE_Ifz");
  auto* q1 = core_as<CQuote>(first.next);
  REQUIRE(q1);
  CHECK(core_alpha_equal(q1->entries[0].rhs, expr("[| 1 |]{}")));
  CHECK_FALSE(is_value(first.next));  // second entry still pending
  StepResult second = step(first.next);
  CHECK(is_value(second.next));
  CHECK(step_expr(second.next) == std::nullopt);
}

TEST_CASE("stuck terms raise evaluation errors") {
  auto code_of = [](const CoreExprPtr& e) {
    try {
      (void)step_expr(e);
    } catch (const CompileError& err) {
      CHECK(err.diag.phase == Phase::Eval);
      return err.diag.code;
    }
    return std::string("(stepped)");
  };
  CHECK(code_of(c_var("x")) == "Stuck");
  CHECK(code_of(c_splice_var("sp0")) == "UnboundSpliceVariable");
  CHECK(code_of(c_hole(1)) == "Stuck");
  CHECK(code_of(expr("fstP <Int> <Bool> 3")) == "Stuck");
  CHECK(code_of(expr("add 1 true")) == "Stuck");
  CHECK(code_of(expr("1 2")) == "Stuck");
}

TEST_CASE("splice environments graft flattened code") {
  // Simple replacement.
  std::vector<SpliceEnvEntry> entries{
      {CoreEnv{}, "sp0", t_int(), c_quote(c_int(42), {})}};
  CHECK(core_alpha_equal(apply_splice_env(c_splice_var("sp0"), entries),
                         c_int(42)));
  // Nested entries flatten recursively.
  std::vector<SpliceEnvEntry> nested{
      {CoreEnv{}, "sp0", t_int(),
       c_quote(c_app(c_global("showInt"), c_splice_var("sp1")),
               {{CoreEnv{}, "sp1", t_int(), c_quote(c_int(7), {})}})}};
  CHECK(core_alpha_equal(apply_splice_env(c_splice_var("sp0"), nested),
                         c_app(c_global("showInt"), c_int(7))));
  // Grafting reaches under binders without renaming.
  CHECK(core_alpha_equal(
      apply_splice_env(c_lam("x", t_int(), c_splice_var("sp0")),
                       {{CoreEnv{}, "sp0", t_int(), c_quote(c_var("x"), {})}}),
      c_lam("x", t_int(), c_var("x"))));
  // An unmapped splice variable is an error.
  CHECK_THROWS_AS(
      (void)apply_splice_env(c_splice_var("sp1"),
                             {{CoreEnv{}, "sp0", t_int(), c_quote(c_int(1), {})}}),
      CompileError);
}

TEST_CASE("programs discharge definitions in order") {
  Ran r = run_core("def k : Int = add 1 2 ; main : Int = mul k k");
  CHECK(core_alpha_equal(r.value, c_int(9)));
  CHECK(r.steps == 3);
  CHECK(r.labels ==
        std::vector<std::string>{"DE_Delta", "DP_DefBeta", "DE_Delta"});
}

TEST_CASE("top-level splices graft unevaluated code into the program") {
  Ran r = run_core(
      "spdef<-1> () |- sp0 : Int = [| add 2 3 |]{} ; main : Int = add sp0 1");
  CHECK(core_alpha_equal(r.value, c_int(6)));
  CHECK(r.labels == std::vector<std::string>{"DP_SPDefBeta", "DE_Delta",
                                             "DE_Delta"});
}

TEST_CASE("nested compile-time splices run inner-first") {
  CheckResult compiled = check_program(parse_source(
      "def nested :: Int = $( $( [| [| 42 |] |] ) ) ; main = nested"));
  std::vector<std::string> labels;
  RunOptions opts;
  opts.trace = [&](long long, const std::string& label, const CoreProgram&) {
    labels.push_back(label);
  };
  RunResult r = run_program(compiled.program, opts);
  CHECK(core_alpha_equal(r.value, c_int(42)));
  CHECK(labels == std::vector<std::string>{"DP_SPDefBeta", "DP_SPDefBeta",
                                           "DP_DefBeta"});
}

TEST_CASE("the step budget is enforced") {
  try {
    run_core("main : Int = fix <Int> <Int> (\\f : Int -> Int . f) 0", 10);
    FAIL("diverging program terminated");
  } catch (const CompileError& e) {
    CHECK(e.diag.phase == Phase::Eval);
    CHECK(e.diag.code == "BudgetExceeded");
    CHECK(e.diag.message == "step budget exceeded (10)");
  }
}

TEST_CASE("trace steps count from one and report the machine state") {
  CoreProgram p = parse_core("main : Int = add 1 (add 2 3)");
  std::vector<long long> steps;
  std::vector<std::string> states;
  RunOptions opts;
  opts.trace = [&](long long k, const std::string&, const CoreProgram& prog) {
    steps.push_back(k);
    states.push_back(pretty_core_program(prog));
  };
  RunResult r = run_program(p, opts);
  CHECK(steps == std::vector<long long>{1, 2});
  CHECK(states[0] == "main : Int = add 1 5\n");
  CHECK(states[1] == "main : Int = 6\n");
  CHECK(r.steps == 2);
}

TEST_CASE("inlining a definition into a splice definition shifts captured levels") {
  // mk's value carries a quotation whose entry records c at level 0. When the
  // program schedule substitutes the value into a level -1 right-hand side,
  // the recorded level must follow the copy or the next state is ill-typed.
  CoreProgram p = parse_core(
      "def mk : Code Int -> Code Int = \\c : Code Int ."
      " [| add sp7 1 |]{(c : (Code Int, 0)) |- sp7 : Int = c} ;\n"
      "spdef<-1> () |- sp8 : Int = mk [| 2 |]{} ;\n"
      "main : Int = sp8");
  lint_program(p);
  std::vector<std::string> states;
  RunOptions opts;
  opts.trace = [&](long long, const std::string&, const CoreProgram& prog) {
    lint_program(prog);  // every intermediate state stays well-typed
    states.push_back(pretty_core_program(prog));
  };
  RunResult r = run_program(p, opts);
  CHECK(pretty_value(r.value) == "3");
  REQUIRE(!states.empty());
  CHECK(states[0].find("(c : (Code Int, -1))") != std::string::npos);
}
