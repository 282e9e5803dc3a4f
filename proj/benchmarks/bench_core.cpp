// Copyright 2026 The dncircle Authors
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

#include "dncircle/coherence.hpp"
#include "dncircle/oracle.hpp"
#include "dncircle/phasespace.hpp"
#include "dncircle/protocol.hpp"
#include "dncircle/specfun.hpp"
#include "dncircle/states.hpp"

namespace {

namespace st = dncircle::states;
namespace ps = dncircle::phasespace;

void BM_Laguerre(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double z = 0.0;
  for (auto _ : state) {
    z += 1e-6;
    benchmark::DoNotOptimize(dncircle::specfun::laguerre(n, 3.0, 2.5 + z));
  }
}
BENCHMARK(BM_Laguerre)->Arg(2)->Arg(16)->Arg(128);

void BM_BesselI0(benchmark::State& state) {
  const st::cdouble z(4.0, 7.0);
  for (auto _ : state) benchmark::DoNotOptimize(dncircle::specfun::bessel_i0(z));
}
BENCHMARK(BM_BesselI0);

void BM_CircleProbability(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dncircle::protocol::circle_probability(2, ell, 1.27));
}
BENCHMARK(BM_CircleProbability)->DenseRange(0, 4);

void BM_BuildFockVector(benchmark::State& state) {
  const auto spec = st::SuperpositionSpec::from_cycles(2, 2, 3.03);
  for (auto _ : state) benchmark::DoNotOptimize(st::build_fock_vector(spec));
}
BENCHMARK(BM_BuildFockVector);

void BM_WignerCompact(benchmark::State& state) {
  const auto spec = st::SuperpositionSpec::circle(2, static_cast<int>(state.range(0)), 3.03);
  double p = 0.0;
  for (auto _ : state) {
    p += 1e-9;
    benchmark::DoNotOptimize(ps::wigner_compact(spec, 1.0, 0.3, 0.2, 1.1 + p, -0.7));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WignerCompact)->RangeMultiplier(2)->Range(2, 16);

void BM_WignerGrid(benchmark::State& state) {
  const auto spec = st::SuperpositionSpec::from_cycles(2, 2, 3.03);
  const ps::ReservoirParams res{1.0, 1.0, 1.0};
  ps::PhaseGrid bounds;
  bounds.np = bounds.nq = 101;
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ps::grid_eval([&](double p, double q) { return ps::wigner_t(spec, res, 0.1, p, q); }, bounds, threads));
  }
  state.SetItemsProcessed(state.iterations() * 101 * 101);
}
BENCHMARK(BM_WignerGrid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CoherenceMeasure(benchmark::State& state) {
  const auto spec = st::SuperpositionSpec::from_cycles(2, 2, 3.03);
  for (auto _ : state) benchmark::DoNotOptimize(dncircle::coherence::coherence_at_compact_time(spec, 1.0, 0.2));
}
BENCHMARK(BM_CoherenceMeasure)->Unit(benchmark::kMicrosecond);

void BM_EvolveDensity(benchmark::State& state) {
  const auto spec = st::SuperpositionSpec::circle(1, 4, 1.5);
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto rho0 = dncircle::oracle::FockDensity::from_vector(st::build_fock_vector(spec, dim));
  const ps::ReservoirParams res{1.0, 1.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(dncircle::oracle::evolve_density(rho0, res, 0.2));
}
BENCHMARK(BM_EvolveDensity)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
