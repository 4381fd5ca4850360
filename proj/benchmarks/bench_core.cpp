#include <benchmark/benchmark.h>

#include "pcslab/engine.hpp"
#include "pcslab/oracle.hpp"
#include "pcslab/protocols.hpp"
#include "pcslab/rng.hpp"
#include "pcslab/tableau.hpp"

namespace {

using namespace pcs;

void tableau_gates(benchmark::State& state) {
  uint32_t n = static_cast<uint32_t>(state.range(0));
  StabilizerTableau t(n);
  Rng rng(1);
  uint64_t ops = 0;
  for (auto _ : state) {
    uint32_t q0 = rng.next_u64() % n;
    uint32_t q1 = (q0 + 1 + rng.next_u64() % (n - 1)) % n;
    t.apply(Gate{GateKind::H, q0});
    t.apply(Gate{GateKind::CX, q0, q1});
    t.apply(Gate{GateKind::S, q1});
    ops += 3;
    benchmark::DoNotOptimize(t);
  }
  state.SetItemsProcessed(ops);
}
BENCHMARK(tableau_gates)->Arg(8)->Arg(14)->Arg(32)->Arg(64);

void tableau_measure(benchmark::State& state) {
  uint32_t n = static_cast<uint32_t>(state.range(0));
  Rng rng(2);
  for (auto _ : state) {
    StabilizerTableau t(n);
    for (uint32_t q = 0; q < n; ++q) t.apply(Gate{GateKind::H, q});
    for (uint32_t q = 0; q + 1 < n; ++q) t.apply(Gate{GateKind::CX, q, q + 1});
    int bit = 0;
    for (uint32_t q = 0; q < n; ++q) bit ^= t.measure_z(q, rng);
    benchmark::DoNotOptimize(bit);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(tableau_measure)->Arg(8)->Arg(14)->Arg(32);

void shot_recursive_pcs(benchmark::State& state) {
  uint32_t r = static_cast<uint32_t>(state.range(0));
  Circuit c = with_gate_noise(build_recursive_pcs(r, 0.1, 0.1), 0.001, 0.01);
  uint64_t i = 0;
  for (auto _ : state) {
    Rng rng = Rng::for_shot(7, i++);
    ShotRecord rec = run_shot(c, rng);
    benchmark::DoNotOptimize(rec.passed);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(shot_recursive_pcs)->Arg(0)->Arg(1)->Arg(2);

void enumerate_xz_pair(benchmark::State& state) {
  Circuit c = build_pcs_xz_pair(0.3, 0.4);
  for (auto _ : state) {
    ExactResult ex = enumerate_paths(c);
    benchmark::DoNotOptimize(ex.fidelity);
  }
}
BENCHMARK(enumerate_xz_pair);

void enumerate_recursive(benchmark::State& state) {
  Circuit c = build_recursive_pcs(1, 0.3, 0.3);  // 10 noise sites, 4^10 paths
  for (auto _ : state) {
    ExactResult ex = enumerate_paths(c);
    benchmark::DoNotOptimize(ex.fidelity);
  }
}
BENCHMARK(enumerate_recursive)->Unit(benchmark::kMillisecond);

void oracle_swap(benchmark::State& state) {
  Circuit c = build_swap_with_pcs(CheckMode::XZ, Protection::Flying, 0.2);
  for (auto _ : state) {
    OracleResult res = oracle_run(c);
    benchmark::DoNotOptimize(res.fidelity);
  }
  state.SetLabel("8 qubits, 6 measurements");
}
BENCHMARK(oracle_swap)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
