// SPDX-License-Identifier: Apache-2.0
//
// cfnoma - downlink rate analysis for cell-free massive MIMO-NOMA
// Copyright (C) 2026 The cfnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cfnoma/precoders.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cfnoma;

namespace
{

Eigen::MatrixXcd random_hbar(Eigen::Index L, Eigen::Index N)
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd h(L, N);
    for (Eigen::Index i = 0; i < h.size(); ++i)
        h(i) = {g(rng), g(rng)};
    return h;
}

} // namespace

static void BM_Mrt(benchmark::State &state)
{
    const auto h = random_hbar(state.range(0), 20);
    const std::vector<double> tb(20, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(mrt_precoder(h, tb));
}
BENCHMARK(BM_Mrt)->Arg(60);

static void BM_Fpzf(benchmark::State &state)
{
    const auto h = random_hbar(state.range(0), 20);
    const std::vector<double> tb(20, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(fpzf_precoder(h, tb));
}
BENCHMARK(BM_Fpzf)->Arg(24)->Arg(60);

static void BM_Mrzf(benchmark::State &state)
{
    const auto h = random_hbar(state.range(0), 20);
    const std::vector<double> psi(20, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(mrzf_precoder(h, 0.8, psi));
}
BENCHMARK(BM_Mrzf)->Arg(24)->Arg(60);
