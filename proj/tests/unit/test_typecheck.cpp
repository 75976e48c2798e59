#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "stagec/diagnostics.hpp"
#include "stagec/parser.hpp"
#include "stagec/pretty.hpp"
#include "stagec/typecheck.hpp"

using namespace stagec;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

CheckResult compile(const std::string& text) {
  return check_program(parse_source(text));
}

Diagnostic reject(const std::string& text) {
  try {
    compile(text);
  } catch (const CompileError& e) {
    return e.diag;
  }
  FAIL("program was accepted");
  return {};
}

}  // namespace

TEST_CASE("unstaged class constraint cannot cross into a quote") {
  std::string src = read_file(std::string(STAGEC_CORPUS_DIR) + "/c1_reject.sth");
  Diagnostic d = reject(src);
  CHECK(d.phase == Phase::Typecheck);
  CHECK(d.code == "NoEvidence");
  CHECK(d.message ==
        "no evidence for Show a at level 1 (have it at level 0; consider CodeC)");
}

TEST_CASE("level-0 qualifier cannot discharge a top-level splice") {
  std::string src = read_file(std::string(STAGEC_CORPUS_DIR) + "/ts2_reject.sth");
  Diagnostic d = reject(src);
  CHECK(d.code == "NoEvidence");
  CHECK(d.message == "no evidence for Lift Int at level -1 (have it at level 0)");
}

TEST_CASE("locals are usable only at their binding level") {
  Diagnostic up = reject("main = \\x : Int -> [| x |]");
  CHECK(up.code == "StageError");
  CHECK(up.message ==
        "variable 'x' is bound at level 0 but used at level 1");
  CHECK(up.bound_level == 0);
  CHECK(up.use_level == 1);

  Diagnostic down = reject("main = [| \\x : Int -> $( x ) |]");
  CHECK(down.code == "StageError");
  CHECK(down.bound_level == 1);
  CHECK(down.use_level == 0);

  // Globals are stage-insensitive.
  CheckResult up_ok = compile("def k :: Int = 1 ; main = [| k |]");
  CHECK(pretty_type(up_ok.program.main_type) == "Code Int");
}

TEST_CASE("type errors and unbound names") {
  CHECK(reject("main = add 1 true").code == "UnificationError");
  CHECK(reject("main = ifz true then 1 else 2").code == "UnificationError");
  CHECK(reject("main = $( 1 )").code == "UnificationError");
  CHECK(reject("main = nope").code == "UnboundVariable");
  CHECK(reject("def a :: Int = b ; def b :: Int = 1 ; main = a").code ==
        "ForwardGlobalReference");
  CHECK(reject("def a :: Int = 1 ; def a :: Int = 2 ; main = a").code ==
        "DuplicateName");
  CHECK(reject("class Show a where show :: a -> String ;\n"
               "def show :: Int = 1 ; main = 0").code == "DuplicateName");
  CHECK(reject("def f :: Eq a => Int = 1 ; main = 0").code == "UnknownClass");
  CHECK(reject("instance Eq Int where eq = \\x : Int -> x ; main = 0").code ==
        "UnknownClass");
}

TEST_CASE("a signature must determine every internal type") {
  Diagnostic d = reject("def d :: Int = sndP (pair nil 5) ; main = d");
  CHECK(d.code == "AmbiguousType");
}

TEST_CASE("instance declarations are validated against their class") {
  std::string cls = "class Show a where show :: a -> String ;\n";
  CHECK(reject(cls +
               "instance Show Int where s = \\x : Int -> showInt x ; main = 0")
            .code == "MethodSignatureMismatch");
  CHECK(reject(cls +
               "instance Show Int where show = \\x : Int -> showInt x ;\n"
               "instance Show Int where show = \\x : Int -> showInt x ;\n"
               "main = 0")
            .code == "OverlappingInstance");
  // Overlap is judged by head constructor, not the full head type.
  CHECK(reject(cls +
               "instance Show (List Int) where show = \\x : List Int -> \"a\" ;\n"
               "instance (Show a) => Show (List a) where show = \\x : List a -> \"b\" ;\n"
               "main = 0")
            .code == "OverlappingInstance");
}

TEST_CASE("recursive evidence requires a function-typed method") {
  Diagnostic d = reject(
      "class R a where r :: Pair a a ;\n"
      "instance R Int where r = $( [| r |] ) ;\n"
      "main = 0");
  CHECK(d.code == "RecursiveEvidence");
}

TEST_CASE("staged persistence elaborates to the golden program") {
  std::string src = read_file(std::string(STAGEC_CORPUS_DIR) + "/c1_prime.sth");
  CheckResult result = compile(src);
  std::string golden =
      read_file(std::string(STAGEC_GOLDEN_DIR) + "/c1_prime.core");
  CHECK(pretty_core_program(result.program) == golden);

  // Structure: method definition, staged definition, one top-level splice
  // at level -1, then an evidence-abstracted main.
  REQUIRE(result.program.decls.size() == 3);
  const auto* def0 = std::get_if<CoreDef>(&result.program.decls[0]);
  REQUIRE(def0);
  CHECK(def0->name == "show");
  const auto* def1 = std::get_if<CoreDef>(&result.program.decls[1]);
  REQUIRE(def1);
  CHECK(def1->name == "c1'");
  const auto* sp = std::get_if<CoreSpDef>(&result.program.decls[2]);
  REQUIRE(sp);
  CHECK(sp->level == -1);
  CHECK(sp->name == "sp1");
  CHECK(type_equal(sp->type, t_arrow(t_var("a"), t_string())));
  CHECK(pretty_type(result.program.main_type) ==
        "forall a . (a -> String) -> a -> String");
  // The splice body applies the staged definition to quoted evidence.
  CHECK(core_alpha_equal(
      sp->body,
      c_app(c_tyapp(c_global("c1'"), t_var("a")), c_quote(c_var("ev2"), {}))));
}

TEST_CASE("elaboration output is deterministic") {
  std::string src = read_file(std::string(STAGEC_CORPUS_DIR) + "/power.sth");
  CheckResult a = compile(src);
  CheckResult b = compile(src);
  CHECK(pretty_core_program(a.program) == pretty_core_program(b.program));
}

TEST_CASE("residual metavariables in main generalize to fresh binders") {
  CheckResult r = compile("main = nil");
  CHECK(pretty_type(r.program.main_type) == "forall a . List a");
  CHECK(core_alpha_equal(r.program.main,
                         c_tylam("a", c_tyapp(c_global("nil"), t_var("a")))));

  CheckResult two = compile("main = pair nil nil");
  CHECK(pretty_type(two.program.main_type) ==
        "forall a b . Pair (List a) (List b)");

  CheckResult mono = compile("main = add");
  CHECK(pretty_type(mono.program.main_type) == "Int -> Int -> Int");
}

TEST_CASE("residual ground constraints in main become evidence parameters") {
  CheckResult r = compile(
      "class Show a where show :: a -> String ;\n"
      "main = show");
  CHECK(pretty_type(r.program.main_type) ==
        "forall a . (a -> String) -> a -> String");
}

TEST_CASE("instance contexts become evidence-lambda parameters") {
  CheckResult r = compile(
      "class Show a where show :: a -> String ;\n"
      "instance Show Int where show = \\x : Int -> showInt x ;\n"
      "instance (Show a) => Show (List a) where show = \\xs : List a -> \"xs\" ;\n"
      "main = show (cons 1 nil)");
  REQUIRE(r.theory.axioms.size() == 2);
  const AxiomInfo& ind = r.theory.axioms[1];
  CHECK(ind.ev_name == "evShowListA");
  CHECK(ind.binders == std::vector<std::string>{"a"});
  REQUIRE(ind.context.size() == 1);
  CHECK(ind.context[0].cls == "Show");
  CHECK(type_equal(ind.context[0].arg, t_var("a")));

  // The evidence definition abstracts the binder and the context evidence.
  const CoreDef* ev = nullptr;
  for (const auto& d : r.program.decls) {
    if (auto* def = std::get_if<CoreDef>(&d)) {
      if (def->name == "evShowListA") ev = def;
    }
  }
  REQUIRE(ev);
  CHECK(pretty_type(ev->type) ==
        "forall a . (a -> String) -> List a -> String");
  CHECK(core_as<CTyLam>(ev->body));
  // Main's evidence chain applies the list instance to the int instance.
  CHECK(core_alpha_equal(
      r.program.main,
      c_app(c_app(c_tyapp(c_global("show"), t_list(t_int())),
                  c_app(c_tyapp(c_global("evShowListA"), t_int()),
                        c_global("evShowInt"))),
            c_app(c_app(c_tyapp(c_global("cons"), t_int()), c_int(1)),
                  c_tyapp(c_global("nil"), t_int())))));
}
