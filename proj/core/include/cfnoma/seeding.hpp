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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace cfnoma
{

// Purpose tags for the seed hierarchy. Values are part of the reproducibility
// contract; do not renumber.
enum class SeedPurpose : std::uint64_t
{
    placement = 1,
    shadowing = 2,
    small_scale = 3,
    pilot_noise = 4,
    sic_symbols = 5,
    drop = 6,
    psi_estimate = 7,
    validation = 8
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Sub-seed for (master, purpose, index); independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, SeedPurpose purpose, std::uint64_t index = 0) noexcept;

using Rng = std::mt19937_64;

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline std::complex<double> complex_normal(Rng &rng, double variance)
{
    std::normal_distribution<double> unit(0.0, 1.0);
    const double s = std::sqrt(variance / 2.0);
    const double re = unit(rng);
    const double im = unit(rng);
    return {s * re, s * im};
}

} // namespace cfnoma
