#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stagec/pipeline.hpp"
#include "stagec/pretty.hpp"

using namespace stagec;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("compile_source runs the full front half of the pipeline") {
  CompileOutput out = compile_source(
      "def k :: Int = add 1 2 ;\n"
      "main = mul k 2");
  CHECK(out.source.decls.size() == 1);
  CHECK(out.program.decls.size() == 1);
  CHECK(pretty_type(out.program.main_type) == "Int");
  CHECK(out.theory.lookup_global("k"));
}

TEST_CASE("expectation headers parse from the first line") {
  auto accept = parse_expectation("-- EXPECT: accept\nmain = 1");
  REQUIRE(accept);
  CHECK(accept->kind == Expectation::Kind::Accept);
  CHECK(accept->detail.empty());

  auto reject = parse_expectation("-- EXPECT: reject NoEvidence\nmain = 1");
  REQUIRE(reject);
  CHECK(reject->kind == Expectation::Kind::Reject);
  CHECK(reject->detail == "NoEvidence");

  auto runs = parse_expectation("-- EXPECT: runs-to 32\nmain = 1");
  REQUIRE(runs);
  CHECK(runs->kind == Expectation::Kind::RunsTo);
  CHECK(runs->detail == "32");

  auto multi = parse_expectation("-- EXPECT: runs-to cons <Int> 1 (nil <Int>)\n");
  REQUIRE(multi);
  CHECK(multi->detail == "cons <Int> 1 (nil <Int>)");

  CHECK_FALSE(parse_expectation("main = 1"));
  CHECK_FALSE(parse_expectation("-- a comment\n-- EXPECT: accept\nmain = 1"));
}

TEST_CASE("every corpus file declares an expectation") {
  int count = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator(STAGEC_CORPUS_DIR)) {
    if (entry.path().extension() != ".sth") continue;
    CAPTURE(entry.path().string());
    CHECK(parse_expectation(read_file(entry.path().string())).has_value());
    ++count;
  }
  CHECK(count == 13);
}

TEST_CASE("verdicts: accept") {
  Expectation accept{Expectation::Kind::Accept, ""};
  VerdictOutcome good = check_expectation("main = 1", accept);
  CHECK(good.matched);
  CHECK(good.expected == "accept");
  CHECK(good.actual == "accept");

  VerdictOutcome bad = check_expectation("main = nope", accept);
  CHECK_FALSE(bad.matched);
  CHECK(bad.actual == "reject UnboundVariable");
}

TEST_CASE("verdicts: reject requires the exact code") {
  Expectation reject{Expectation::Kind::Reject, "NoEvidence"};
  VerdictOutcome wrong_code = check_expectation("main = nope", reject);
  CHECK_FALSE(wrong_code.matched);
  CHECK(wrong_code.expected == "reject NoEvidence");
  CHECK(wrong_code.actual == "reject UnboundVariable");

  VerdictOutcome accepted = check_expectation("main = 1", reject);
  CHECK_FALSE(accepted.matched);
  CHECK(accepted.actual == "accept");

  Expectation unbound{Expectation::Kind::Reject, "UnboundVariable"};
  CHECK(check_expectation("main = nope", unbound).matched);
}

TEST_CASE("verdicts: runs-to compares printed final values") {
  Expectation to6{Expectation::Kind::RunsTo, "6"};
  CHECK(check_expectation("main = add 1 5", to6).matched);

  VerdictOutcome wrong = check_expectation("main = add 1 4", to6);
  CHECK_FALSE(wrong.matched);
  CHECK(wrong.expected == "runs-to 6");
  CHECK(wrong.actual == "runs-to 5");

  VerdictOutcome rejected = check_expectation("main = [| x |]", to6);
  CHECK_FALSE(rejected.matched);
  CHECK(rejected.actual == "reject UnboundVariable");

  Expectation str{Expectation::Kind::RunsTo, "\"42\""};
  CHECK(check_expectation("main = showInt 42", str).matched);
}

TEST_CASE("all corpus expectations hold") {
  for (const auto& entry :
       std::filesystem::directory_iterator(STAGEC_CORPUS_DIR)) {
    if (entry.path().extension() != ".sth") continue;
    CAPTURE(entry.path().string());
    std::string text = read_file(entry.path().string());
    auto exp = parse_expectation(text);
    REQUIRE(exp);
    VerdictOutcome v = check_expectation(text, *exp);
    CHECK_MESSAGE(v.matched, "expected ", v.expected, ", got ", v.actual);
  }
}
