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

#include "cfnoma/monte_carlo.hpp"
#include "cfnoma/scenario.hpp"

#include <benchmark/benchmark.h>

using namespace cfnoma;

static void BM_McTrials(benchmark::State &state)
{
    SystemConfig cfg;
    cfg.antennas_per_ap = static_cast<std::size_t>(state.range(0));
    const auto stats = estimation_stats(generate_drop(cfg, 1).beta, cfg.num_clusters, cfg.pilot_power);
    GainRequest req;
    req.precoder = cfg.antennas_per_ap > cfg.num_clusters ? Precoder::fpzf : Precoder::mrt;
    req.antennas = cfg.antennas_per_ap;
    req.pilot_len = cfg.num_clusters;
    req.pilot_power = cfg.pilot_power;
    req.trials = 10;
    for (auto _ : state)
        benchmark::DoNotOptimize(collect_gains(stats, req));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(req.trials));
}
BENCHMARK(BM_McTrials)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
