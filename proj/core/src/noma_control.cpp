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

#include "cfnoma/noma_control.hpp"
#include "cfnoma/det_equiv.hpp"
#include "cfnoma/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cfnoma
{

Table ordering_metric_linear(const EstimationStats &stats)
{
    const auto &th = stats.theta;
    Table metric(th.clusters(), th.users());
    for (std::size_t n = 0; n < th.clusters(); ++n)
        for (std::size_t k = 0; k < th.users(); ++k)
        {
            double s = 0.0;
            for (std::size_t m = 0; m < th.aps(); ++m)
                s += std::sqrt(th(m, n, k));
            metric(n, k) = s;
        }
    return metric;
}

Table ordering_metric_mrzf(const EstimationStats &stats, const DetEquivState &state)
{
    const auto &c = stats.c;
    Table metric(c.clusters(), c.users());
    for (std::size_t n = 0; n < c.clusters(); ++n)
        for (std::size_t k = 0; k < c.users(); ++k)
        {
            double s = 0.0;
            for (std::size_t m = 0; m < c.aps(); ++m)
            {
                const double e = state.e(m, n);
                s += c(m, n, k) * e / ((1.0 + e) * std::sqrt(state.psi_o(m, n)));
            }
            metric(n, k) = s;
        }
    return metric;
}

Ordering order_users(const Table &metric)
{
    Ordering ordering(metric.rows());
    for (std::size_t n = 0; n < metric.rows(); ++n)
    {
        auto &idx = ordering[n];
        idx.resize(metric.cols());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return metric(n, a) > metric(n, b); });
    }
    return ordering;
}

PowerAllocation allocate_power(double total_power, std::span<const double> split, const Ordering &ordering)
{
    require(!ordering.empty(), ErrorCode::contract_violation, "no clusters to allocate");
    const std::size_t N = ordering.size();
    const std::size_t K = ordering.front().size();
    require(split.size() == K, ErrorCode::invalid_config, "power split length must equal users per cluster");
    double sum = 0.0;
    for (std::size_t i = 0; i < K; ++i)
    {
        require(split[i] >= 0.0, ErrorCode::invalid_config, "power split entries must be >= 0");
        require(i == 0 || split[i] >= split[i - 1], ErrorCode::invalid_config,
                "power split must be ascending so stronger users get less power");
        sum += split[i];
    }
    require(std::abs(sum - 1.0) <= 1e-12, ErrorCode::invalid_config, "power split must sum to 1");

    PowerAllocation out;
    out.ordering = ordering;
    out.lambda = Table(N, K);
    out.p = Table(N, K);
    out.p_cluster.assign(N, 0.0);
    const double lambda_n = 1.0 / static_cast<double>(N);
    for (std::size_t n = 0; n < N; ++n)
    {
        require(ordering[n].size() == K, ErrorCode::contract_violation, "ragged ordering");
        for (std::size_t pos = 0; pos < K; ++pos)
        {
            const std::size_t k = ordering[n][pos];
            out.lambda(n, k) = lambda_n * split[pos];
            out.p(n, k) = total_power * out.lambda(n, k);
            out.p_cluster[n] += out.p(n, k);
        }
    }
    return out;
}

double intra_cluster_weight(const PowerAllocation &power, const Table &rho, std::size_t n, std::size_t k)
{
    const auto &order = power.ordering[n];
    const auto self = std::find(order.begin(), order.end(), k);
    require(self != order.end(), ErrorCode::contract_violation, "user missing from ordering");

    double w = 0.0;
    for (auto it = order.begin(); it != self; ++it)
        w += power.p(n, *it);
    for (auto it = std::next(self); it != order.end(); ++it)
        w += power.p(n, *it) * (2.0 - 2.0 * rho(n, *it));
    return w;
}

Table uniform_sic(std::size_t clusters, std::size_t users, double rho)
{
    return Table(clusters, users, rho);
}

} // namespace cfnoma
