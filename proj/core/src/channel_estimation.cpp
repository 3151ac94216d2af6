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

#include "cfnoma/channel_estimation.hpp"
#include "cfnoma/error.hpp"
#include "cfnoma/seeding.hpp"

#include <cmath>

namespace cfnoma
{

EstimationStats estimation_stats(const Tensor3 &beta, std::size_t pilot_len, double pilot_power)
{
    require(pilot_power >= 0.0, ErrorCode::invalid_config, "pilot power must be non-negative");
    const std::size_t M = beta.aps(), N = beta.clusters(), K = beta.users();

    EstimationStats s;
    s.beta = beta;
    s.c = Tensor3(M, N, K);
    s.theta = Tensor3(M, N, K);
    s.a = Tensor3(M, N, K);
    s.theta_bar = Table(M, N);
    s.tau_pp = static_cast<double>(pilot_len) * pilot_power;
    const double root = std::sqrt(s.tau_pp);

    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < N; ++n)
        {
            double sum = 0.0;
            for (std::size_t k = 0; k < K; ++k)
                sum += beta(m, n, k);
            const double tb = 1.0 + s.tau_pp * sum;
            s.theta_bar(m, n) = tb;
            for (std::size_t k = 0; k < K; ++k)
            {
                const double b = beta(m, n, k);
                const double c = root * b / tb;
                s.c(m, n, k) = c;
                s.theta(m, n, k) = root * b * c;
                s.a(m, n, k) = std::sqrt(std::max(b - s.theta(m, n, k), 0.0) / tb);
            }
        }
    return s;
}

ChannelRealization draw_small_scale(const Tensor3 &beta, std::size_t antennas, std::uint64_t seed)
{
    const std::size_t M = beta.aps(), N = beta.clusters(), K = beta.users();
    const auto L = static_cast<Eigen::Index>(antennas);

    ChannelRealization ch;
    ch.clusters = N;
    ch.users = K;
    ch.h.assign(M, Eigen::MatrixXcd(L, static_cast<Eigen::Index>(N * K)));

    Rng rng(seed);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t k = 0; k < K; ++k)
            {
                const double var = beta(m, n, k);
                auto col = ch.h[m].col(ch.column(n, k));
                for (Eigen::Index l = 0; l < L; ++l)
                    col(l) = complex_normal(rng, var);
            }
    return ch;
}

void pilot_observation(ChannelRealization &ch, std::size_t pilot_len, double pilot_power, std::uint64_t seed,
                       PilotNoise noise)
{
    require(pilot_len >= ch.clusters, ErrorCode::invalid_config,
            "pilot length " + std::to_string(pilot_len) + " is shorter than the number of pilots " +
                std::to_string(ch.clusters));
    const double gain = std::sqrt(static_cast<double>(pilot_len) * pilot_power);
    const auto L = static_cast<Eigen::Index>(ch.antennas());

    Rng rng(seed);
    ch.hbar.assign(ch.aps(), Eigen::MatrixXcd(L, static_cast<Eigen::Index>(ch.clusters)));
    for (std::size_t m = 0; m < ch.aps(); ++m)
        for (std::size_t n = 0; n < ch.clusters; ++n)
        {
            auto col = ch.hbar[m].col(static_cast<Eigen::Index>(n));
            col.setZero();
            for (std::size_t k = 0; k < ch.users; ++k)
                col += ch.h[m].col(ch.column(n, k));
            col *= gain;
            if (noise == PilotNoise::on)
                for (Eigen::Index l = 0; l < L; ++l)
                    col(l) += complex_normal(rng, 1.0);
        }
}

void mmse_estimate(ChannelRealization &ch, const EstimationStats &stats)
{
    require(ch.hbar.size() == ch.aps(), ErrorCode::contract_violation, "pilot observation missing");
    require(stats.c.aps() == ch.aps() && stats.c.clusters() == ch.clusters && stats.c.users() == ch.users,
            ErrorCode::contract_violation, "statistics do not match the channel realization shape");

    ch.hhat.resize(ch.aps());
    ch.eps.resize(ch.aps());
    for (std::size_t m = 0; m < ch.aps(); ++m)
    {
        ch.hhat[m].resize(ch.h[m].rows(), ch.h[m].cols());
        for (std::size_t n = 0; n < ch.clusters; ++n)
            for (std::size_t k = 0; k < ch.users; ++k)
                ch.hhat[m].col(ch.column(n, k)) = stats.c(m, n, k) * ch.hbar[m].col(static_cast<Eigen::Index>(n));
        ch.eps[m] = ch.h[m] - ch.hhat[m];
    }
}

} // namespace cfnoma
