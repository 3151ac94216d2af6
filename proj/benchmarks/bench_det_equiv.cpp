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

#include "cfnoma/det_equiv.hpp"
#include "cfnoma/scenario.hpp"

#include <benchmark/benchmark.h>

using namespace cfnoma;

static void BM_FixedPoint(benchmark::State &state)
{
    SystemConfig cfg;
    cfg.num_clusters = static_cast<std::size_t>(state.range(0));
    cfg.antennas_per_ap = 2 * cfg.num_clusters;
    const auto stats = estimation_stats(generate_drop(cfg, 1).beta, cfg.num_clusters, cfg.pilot_power);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_fixed_point(stats.theta_bar, cfg.rzf_alpha, cfg.antennas_per_ap));
}
BENCHMARK(BM_FixedPoint)->Arg(4)->Arg(10)->Arg(20);

static void BM_DetEquivFull(benchmark::State &state)
{
    SystemConfig cfg;
    cfg.num_clusters = static_cast<std::size_t>(state.range(0));
    cfg.antennas_per_ap = 2 * cfg.num_clusters;
    const auto stats = estimation_stats(generate_drop(cfg, 1).beta, cfg.num_clusters, cfg.pilot_power);
    const std::vector<double> p(cfg.num_clusters, cfg.total_ap_power / static_cast<double>(cfg.num_clusters));
    for (auto _ : state)
    {
        auto s = solve_det_equiv(stats.theta_bar, cfg.rzf_alpha, cfg.antennas_per_ap);
        psi_and_upsilon(s, p, cfg.antennas_per_ap);
        benchmark::DoNotOptimize(s.upsilon);
    }
}
BENCHMARK(BM_DetEquivFull)->Arg(4)->Arg(10)->Arg(20);
