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

#include "cfnoma/scenario.hpp"
#include "cfnoma/error.hpp"
#include "cfnoma/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cfnoma
{

double distance(const Point &a, const Point &b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

NetworkDrop drop_from_positions(const SystemConfig &cfg, std::vector<Point> aps, std::vector<Point> centers,
                                std::vector<std::vector<Point>> users, std::uint64_t seed)
{
    const std::size_t num_aps = aps.size();
    const std::size_t num_clusters = users.size();
    const std::size_t per_cluster = num_clusters ? users.front().size() : 0;
    for (const auto &cluster : users)
        require(cluster.size() == per_cluster, ErrorCode::contract_violation, "ragged user layout");

    const double sigma2 = noise_variance(cfg.bandwidth_hz, cfg.noise_figure_db);
    Rng shadow(derive_seed(seed, SeedPurpose::shadowing));
    std::normal_distribution<double> z_db(0.0, 1.0);

    NetworkDrop drop;
    drop.beta = Tensor3(num_aps, num_clusters, per_cluster);
    for (std::size_t m = 0; m < num_aps; ++m)
        for (std::size_t n = 0; n < num_clusters; ++n)
            for (std::size_t k = 0; k < per_cluster; ++k)
            {
                // Draw unconditionally so the stream does not depend on geometry.
                const double z = cfg.shadow_std_db * z_db(shadow);
                const double d = std::max(distance(aps[m], users[n][k]), cfg.min_distance);
                const double shadow_db = d > cfg.breakpoint_d1 ? z : 0.0;
                drop.beta(m, n, k) = std::pow(10.0, (path_loss_db(d, cfg) + shadow_db) / 10.0) / sigma2;
            }

    drop.ap_positions = std::move(aps);
    drop.cluster_centers = std::move(centers);
    drop.user_positions = std::move(users);
    drop.master_seed = seed;
    return drop;
}

NetworkDrop generate_drop(const SystemConfig &cfg, std::uint64_t seed)
{
    validate(cfg);
    Rng place(derive_seed(seed, SeedPurpose::placement));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double side = cfg.area_side;

    std::vector<Point> aps(cfg.num_aps);
    for (auto &p : aps)
        p = {side * unit(place), side * unit(place)};

    std::vector<Point> centers(cfg.num_clusters);
    for (auto &p : centers)
        p = {side * unit(place), side * unit(place)};

    std::vector<std::vector<Point>> users(cfg.num_clusters, std::vector<Point>(cfg.users_per_cluster));
    for (std::size_t n = 0; n < cfg.num_clusters; ++n)
        for (auto &u : users[n])
        {
            const double r = cfg.cluster_radius * std::sqrt(unit(place));
            const double phi = 2.0 * std::numbers::pi * unit(place);
            u.x = std::clamp(centers[n].x + r * std::cos(phi), 0.0, side);
            u.y = std::clamp(centers[n].y + r * std::sin(phi), 0.0, side);
        }

    return drop_from_positions(cfg, std::move(aps), std::move(centers), std::move(users), seed);
}

NetworkDrop drop_from_beta(Tensor3 beta)
{
    NetworkDrop drop;
    drop.beta = std::move(beta);
    return drop;
}

} // namespace cfnoma
