#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stagec/core_parser.hpp"
#include "stagec/diagnostics.hpp"
#include "stagec/eval.hpp"
#include "stagec/lint.hpp"
#include "stagec/parser.hpp"
#include "stagec/pipeline.hpp"
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

std::vector<std::string> accepted_corpus_files() {
  std::vector<std::string> out;
  for (const auto& entry :
       std::filesystem::directory_iterator(STAGEC_CORPUS_DIR)) {
    if (entry.path().extension() != ".sth") continue;
    std::string text = read_file(entry.path().string());
    auto exp = parse_expectation(text);
    if (exp && exp->kind != Expectation::Kind::Reject) {
      out.push_back(entry.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string lint_code(const std::string& core_text) {
  try {
    lint_program(parse_core(core_text));
  } catch (const CompileError& e) {
    CHECK(e.diag.phase == Phase::Lint);
    return e.diag.code;
  }
  return "(ok)";
}

}  // namespace

TEST_CASE("every accepted corpus program lints after elaboration") {
  auto files = accepted_corpus_files();
  REQUIRE(files.size() == 11);
  for (const auto& path : files) {
    CAPTURE(path);
    CheckResult result = check_program(parse_source(read_file(path)));
    CHECK_NOTHROW(lint_program(result.program));
  }
}

TEST_CASE("every intermediate evaluation state of every accepted corpus program lints") {
  for (const auto& path : accepted_corpus_files()) {
    CAPTURE(path);
    CheckResult result = check_program(parse_source(read_file(path)));
    RunOptions opts;
    opts.max_steps = 200;
    opts.trace = [&](long long step, const std::string& label,
                     const CoreProgram& prog) {
      try {
        lint_program(prog);
      } catch (const CompileError& e) {
        FAIL(path, " step ", step, " (", label, "): ", e.what());
      }
    };
    try {
      run_program(result.program, opts);
    } catch (const CompileError& e) {
      // Only the step budget may interrupt the run; the first 200 states
      // were already checked by the trace callback.
      CHECK(e.diag.code == "BudgetExceeded");
    }
  }
}

TEST_CASE("elaborated programs survive a print/parse/lint round trip") {
  for (const auto& path : accepted_corpus_files()) {
    CAPTURE(path);
    CheckResult result = check_program(parse_source(read_file(path)));
    std::string printed = pretty_core_program(result.program);
    CoreProgram reparsed = parse_core(printed);
    CHECK_NOTHROW(lint_program(reparsed));
    CHECK(pretty_core_program(reparsed) == printed);
  }
}

TEST_CASE("the checked-in golden core file lints as-is") {
  std::string golden =
      read_file(std::string(STAGEC_GOLDEN_DIR) + "/c1_prime.core");
  CHECK_NOTHROW(lint_program(parse_core(golden)));
}

TEST_CASE("recorded types are enforced") {
  CHECK(lint_code("def k : Int = true ; main : Int = k") == "LintTypeMismatch");
  CHECK(lint_code("main : Int = \\x : Int . x") == "LintTypeMismatch");
  CHECK(lint_code("main : Int = add 1 true") == "LintTypeMismatch");
  CHECK(lint_code("main : Int = 1 2") == "LintTypeMismatch");
  CHECK(lint_code("main : Int = ifz 0 then 1 else \"x\"") == "LintTypeMismatch");
  CHECK(lint_code("main : Int = ifz true then 1 else 2") == "LintTypeMismatch");
  CHECK(lint_code(
            "spdef<-1> () |- sp0 : Int = [| true |]{} ; main : Int = sp0") ==
        "LintTypeMismatch");
  CHECK(lint_code("main : Code Int = [| sp0 |]{() |- sp0 : Int = [| true |]{}}") ==
        "LintTypeMismatch");
  CHECK(lint_code("main : Int = 1") == "(ok)");
}

TEST_CASE("stage discipline is enforced exactly") {
  CHECK(lint_code("main : Int -> Code Int = \\x : Int . [| x |]{}") ==
        "LintStageError");
  CHECK(lint_code("main : Code (Code Int) = "
                  "[| [| sp0 |]{} |]{() |- sp0 : Int = [| 1 |]{}}") ==
        "LintStageError");
  CHECK(lint_code("main : Code (Int -> Int) = [| \\x : Int . x |]{}") == "(ok)");
}

TEST_CASE("scoping failures in core programs") {
  CHECK(lint_code("main : Int = x") == "UnboundVariable");
  CHECK(lint_code("def a : Int = b ; def b : Int = 1 ; main : Int = a") ==
        "ForwardGlobalReference");
  CHECK(lint_code("def a : Int = 1 ; def a : Int = 2 ; main : Int = a") ==
        "DuplicateName");
  CHECK(lint_code("main : List a = nil <a>") == "UnboundTypeVariable");
  CHECK(lint_code("def f : forall a . a -> a = /\\a . \\x : a . x ; "
                  "main : Int = f <Int> 1") == "(ok)");
}

TEST_CASE("splice variables must be bound") {
  CoreProgram p;
  p.main = c_splice_var("sp9");
  p.main_type = t_int();
  try {
    lint_program(p);
    FAIL("unbound splice variable accepted");
  } catch (const CompileError& e) {
    CHECK(e.diag.code == "UnboundSpliceVar");
  }
}

TEST_CASE("captured environments must be contained in the use-site environment") {
  // The entry records x at level 0, but the quote sits in an empty
  // environment.
  CHECK(lint_code("main : Code Int = "
                  "[| sp0 |]{(x : (Int, 0)) |- sp0 : Int = [| 7 |]{}}") ==
        "LintEnvMismatch");
  // Same capture, but the binder is genuinely in scope at the use site.
  CHECK(lint_code("main : Int -> Code Int = \\x : Int . "
                  "[| sp0 |]{(x : (Int, 0)) |- sp0 : Int = [| 7 |]{}}") ==
        "(ok)");
}
