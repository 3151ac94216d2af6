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

#include "cfnoma/channel_estimation.hpp"
#include "cfnoma/closed_form_rates.hpp"
#include "cfnoma/config.hpp"
#include "cfnoma/det_equiv.hpp"
#include "cfnoma/monte_carlo.hpp"
#include "cfnoma/noma_control.hpp"
#include "cfnoma/precoders.hpp"

#include <optional>

namespace cfnoma
{

struct Variant
{
    Precoder precoder = Precoder::mrt;
    Scheme scheme = Scheme::noma;
    SicMode sic = SicMode::imperfect;
};

/// Per-pilot view of a drop. NOMA keeps the N x K grid; OMA regroups into
/// K N single-user clusters, user (n, k) becoming cluster n K + k.
struct Layout
{
    Tensor3 beta;
    std::size_t pilot_len = 0;
    Scheme scheme = Scheme::noma;
};

Layout make_layout(const Tensor3 &beta, Scheme scheme);

/// Maps a per-pilot table of the layout back onto the N x K user grid.
Table to_user_grid(const Table &per_layout, std::size_t clusters, std::size_t users, Scheme scheme);

struct PreparedVariant
{
    Variant variant;
    Layout layout;
    EstimationStats stats;
    PowerAllocation power;
    Table rho;
    std::optional<DetEquivState> det_equiv; // mRZF only
};

/// Statistics, user ordering, power allocation and (for mRZF) the deterministic equivalent.
PreparedVariant prepare_variant(const SystemConfig &cfg, const Tensor3 &beta, const Variant &variant);

RateReport evaluate_closed_form(const SystemConfig &cfg, const PreparedVariant &prepared);

struct McSettings
{
    std::size_t trials = 2000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    Normalization mrzf_normalization = Normalization::deterministic_equivalent;
    std::size_t psi_draws = 200;
};

RateReport evaluate_monte_carlo(const SystemConfig &cfg, const PreparedVariant &prepared, const McSettings &settings,
                                EffectiveGainSamples *samples_out = nullptr);

} // namespace cfnoma
