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

#pragma once

#include "cfnoma/config.hpp"
#include "cfnoma/csv.hpp"
#include "cfnoma/pipeline.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cfnoma
{

enum class ExperimentKind
{
    sweep_users,
    cdf_cluster,
    de_error,
    validate
};

enum class SourceSelection
{
    closed,
    mc,
    both
};

std::string_view to_string(ExperimentKind kind) noexcept;

struct ExperimentSpec
{
    ExperimentKind kind = ExperimentKind::sweep_users;
    SystemConfig base;
    std::vector<std::size_t> axis; // clusters for sweep-users, antennas for de-error
    std::vector<Precoder> precoders{Precoder::mrt, Precoder::fpzf, Precoder::mrzf};
    std::vector<Scheme> schemes{Scheme::noma, Scheme::oma};
    std::vector<SicMode> sics{SicMode::perfect, SicMode::imperfect};
    SourceSelection source = SourceSelection::closed;
    std::size_t drops = 50;
    std::size_t trials = 2000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

/// Seed of drop d at a sweep point; key identifies the point (N for sweeps, L for de-error).
std::uint64_t drop_seed(std::uint64_t master, std::uint64_t key, std::size_t drop) noexcept;

std::vector<CsvRow> sweep_users(const ExperimentSpec &spec);

std::vector<CsvRow> cdf_cluster(const ExperimentSpec &spec);

struct DeErrorPoint
{
    std::size_t antennas = 0;
    std::size_t clusters = 0;
    std::vector<double> rel_error; // (R_mc - R_de) / R_mc per drop
    double mean_abs_rel_error = 0.0;
};

std::vector<CsvRow> de_error(const ExperimentSpec &spec, std::vector<DeErrorPoint> *summary = nullptr);

/// Linear-interpolated empirical quantile, q in [0, 1].
double empirical_quantile(std::vector<double> values, double q);

/// Provenance sidecar: experiment kind, seed, drops, trials, config hash and the full config.
std::string meta_text(const ExperimentSpec &spec);

} // namespace cfnoma
