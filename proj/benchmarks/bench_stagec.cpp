#include <benchmark/benchmark.h>

#include <string>

#include "stagec/entail.hpp"
#include "stagec/eval.hpp"
#include "stagec/lint.hpp"
#include "stagec/parser.hpp"
#include "stagec/pipeline.hpp"
#include "stagec/typecheck.hpp"
#include "stagec/types.hpp"

namespace {

// Staged exponentiation: one class, one instance, a fix-driven code
// generator, and a splice in main. Touches every pipeline phase.
const std::string kPowerSource = R"(
class Num a where numDict :: Pair (a -> a -> a) a ;
instance Num Int where numDict = pair mul 1 ;
def power :: forall a . CodeC (Num a) => Int -> Code a -> Code a =
  fix (\rec : (Int -> Code a -> Code a) -> \k : Int -> \cn : Code a ->
    ifz k then [| sndP numDict |]
          else [| fstP numDict $( cn ) $( rec (sub k 1) cn ) |]) ;
main = $( power 5 [| 2 |] )
)";

void BM_ParsePower(benchmark::State& state) {
  for (auto _ : state) {
    auto program = stagec::parse_source(kPowerSource);
    benchmark::DoNotOptimize(program);
  }
}
BENCHMARK(BM_ParsePower);

void BM_CheckPower(benchmark::State& state) {
  auto source = stagec::parse_source(kPowerSource);
  for (auto _ : state) {
    auto checked = stagec::check_program(source);
    benchmark::DoNotOptimize(checked);
  }
}
BENCHMARK(BM_CheckPower);

void BM_CompilePower(benchmark::State& state) {
  for (auto _ : state) {
    auto compiled = stagec::compile_source(kPowerSource);
    benchmark::DoNotOptimize(compiled);
  }
}
BENCHMARK(BM_CompilePower);

void BM_LintPower(benchmark::State& state) {
  auto compiled = stagec::compile_source(kPowerSource);
  for (auto _ : state) {
    stagec::lint_program(compiled.program);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_LintPower);

void BM_RunPower(benchmark::State& state) {
  auto compiled = stagec::compile_source(kPowerSource);
  for (auto _ : state) {
    auto result = stagec::run_program(compiled.program);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_RunPower);

// Instance search: the wanted constraint is discharged by the Num Int axiom.
void BM_EntailAxiom(benchmark::State& state) {
  auto compiled = stagec::compile_source(kPowerSource);
  stagec::Constraint wanted{0, "Num", stagec::t_int()};
  for (auto _ : state) {
    stagec::Freshener fresh;
    auto outcome = stagec::entail(compiled.theory, fresh, {},
                                  stagec::CoreEnv{}, wanted, -1);
    benchmark::DoNotOptimize(outcome);
  }
}
BENCHMARK(BM_EntailAxiom);

// Level adjustment: the given matches only after normalizing depths against
// levels, so solving emits escaping splice-environment entries.
void BM_EntailLevelShift(benchmark::State& state) {
  auto compiled = stagec::compile_source(kPowerSource);
  stagec::Given given{"ev0", stagec::Constraint{0, "Num", stagec::t_int()}, 3};
  stagec::Constraint wanted{3, "Num", stagec::t_int()};
  for (auto _ : state) {
    stagec::Freshener fresh;
    auto outcome = stagec::entail(compiled.theory, fresh, {given},
                                  stagec::CoreEnv{}, wanted, 0);
    benchmark::DoNotOptimize(outcome);
  }
}
BENCHMARK(BM_EntailLevelShift);

}  // namespace

BENCHMARK_MAIN();
