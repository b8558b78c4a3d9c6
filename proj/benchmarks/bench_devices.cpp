// Copyright 2026 The qshutter developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numbers>

#include "qshutter/interrogation.hpp"
#include "qshutter/protocols.hpp"
#include "qshutter/shutter.hpp"

namespace {

using namespace qshutter;

const double kPi = std::numbers::pi;

void BM_SpectralPower(benchmark::State& state) {
  const Operator u = build_cycle_unitary(kPi / 10);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_power(u, n));
  }
}
BENCHMARK(BM_SpectralPower)->Arg(25)->Arg(999);

void BM_MatrixPowerDirect(benchmark::State& state) {
  const Operator u = build_cycle_unitary(kPi / 10);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_power_direct(u, n));
  }
}
BENCHMARK(BM_MatrixPowerDirect)->Arg(25)->Arg(999);

void BM_EvolveEmptyClosed(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_empty_closed(kPi / 102, 101));
  }
}
BENCHMARK(BM_EvolveEmptyClosed);

void BM_Interrogate(benchmark::State& state) {
  const InterrogationConfig cfg{kPi / 48, 24, true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(interrogate(cfg));
  }
}
BENCHMARK(BM_Interrogate);

void BM_RealizedGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(realized_gate(n));
  }
}
BENCHMARK(BM_RealizedGate)->Arg(23)->Arg(101)->Arg(201);

void BM_MemoryRoundtrip(benchmark::State& state) {
  const LogicalQubit q{0.6, 0.8};
  for (auto _ : state) {
    for (const ProtocolOutcome& wr : memory_write(q)) {
      const int a = wr.classical_bits.at("a");
      for (const ProtocolOutcome& rd : memory_read(wr.final_state, a)) {
        benchmark::DoNotOptimize(
            apply_read_corrections(rd.final_state, a,
                                   rd.classical_bits.at("b")));
      }
    }
  }
}
BENCHMARK(BM_MemoryRoundtrip);

void BM_CnotProtocol(benchmark::State& state) {
  const TwoQubitAmps q{0.5, 0.5, 0.5, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cnot_protocol(q, 0, 1));
  }
}
BENCHMARK(BM_CnotProtocol);

}  // namespace

BENCHMARK_MAIN();
