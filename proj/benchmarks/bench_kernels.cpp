// Copyright 2026 The gridprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <numbers>
#include <string>

#include "gridprep/basis.hpp"
#include "gridprep/discriminate.hpp"
#include "gridprep/loader.hpp"
#include "gridprep/statevec.hpp"

using namespace gridprep;

namespace {

QuantumState blank(unsigned width) {
    RegisterLayout layout;
    layout.add("x", Role::particle, width);
    return QuantumState(std::move(layout));
}

void BM_Rotation(benchmark::State &st) {
    const auto n = static_cast<unsigned>(st.range(0));
    auto s = blank(n);
    for (auto _ : st) {
        apply_rotation(s, n - 1, 0.3);
        benchmark::DoNotOptimize(s);
    }
    st.SetItemsProcessed(st.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_Rotation)->DenseRange(10, 22, 4);

void BM_Qft(benchmark::State &st) {
    const auto n = static_cast<unsigned>(st.range(0));
    auto s = blank(n);
    for (auto _ : st) {
        qft(s, "x");
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_Qft)->DenseRange(8, 20, 4);

void BM_LoadBoxSine(benchmark::State &st) {
    const auto l = static_cast<unsigned>(st.range(0));
    const Orbital orbital = Orbital::box_sine(2);
    for (auto _ : st) {
        auto s = blank(l);
        load_orbital(s, "x", orbital, {});
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_LoadBoxSine)->DenseRange(4, 16, 4);

void BM_LoadHermiteQuadrature(benchmark::State &st) {
    const auto l = static_cast<unsigned>(st.range(0));
    const Orbital orbital = Orbital::hermite(2, 0.5, 0.1);
    IntegrationSpec spec;
    spec.backend = Backend::adaptive_quadrature;
    for (auto _ : st) {
        auto s = blank(l);
        load_orbital(s, "x", orbital, spec);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_LoadHermiteQuadrature)->DenseRange(4, 10, 3);

void BM_PhaseEstimate(benchmark::State &st) {
    const auto q = static_cast<unsigned>(st.range(0));
    const BasisSet basis({Orbital::box_sine(1, 1.0, 1.0), Orbital::box_sine(2, 1.0, std::numbers::sqrt2),
                          Orbital::box_sine(3, 1.0, std::numbers::sqrt3), Orbital::box_sine(4, 1.0, 2.0)},
                         6);
    const CMatrix u = basis.fock_evolution(0.9);
    for (auto _ : st) {
        RegisterLayout layout;
        layout.add("x", Role::particle, 6);
        layout.add("r", Role::readout, q);
        QuantumState s(std::move(layout));
        load_orbital(s, "x", Orbital::box_sine(2), {});
        phase_estimate(s, "x", u, "r");
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_PhaseEstimate)->DenseRange(4, 10, 3);

} // namespace

BENCHMARK_MAIN();
