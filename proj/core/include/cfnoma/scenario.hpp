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
#include "cfnoma/tensor.hpp"

#include <cstdint>
#include <vector>

namespace cfnoma
{

struct Point
{
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point &) const = default;
};

double distance(const Point &a, const Point &b) noexcept;

/// One realization of the network geometry and its large-scale fading.
/// beta is noise-normalized: beta = 10^((PL + z)/10) / sigma^2.
struct NetworkDrop
{
    std::vector<Point> ap_positions;             // M
    std::vector<Point> cluster_centers;          // N
    std::vector<std::vector<Point>> user_positions; // N x K
    Tensor3 beta;                                // M x N x K
    std::uint64_t master_seed = 0;

    bool operator==(const NetworkDrop &) const = default;
};

/// Uniform APs and cluster centres in the square, users uniform in a disc of
/// radius cluster_radius around their centre (clipped to the square).
/// Shadowing is applied only beyond breakpoint_d1.
NetworkDrop generate_drop(const SystemConfig &cfg, std::uint64_t seed);

/// Large-scale coefficients for a fixed geometry (positions are not redrawn).
NetworkDrop drop_from_positions(const SystemConfig &cfg, std::vector<Point> aps, std::vector<Point> centers,
                                std::vector<std::vector<Point>> users, std::uint64_t seed);

/// Wraps an explicit beta tensor (tests, hand-built scenarios).
NetworkDrop drop_from_beta(Tensor3 beta);

} // namespace cfnoma
