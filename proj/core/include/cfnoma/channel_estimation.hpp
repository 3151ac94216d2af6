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

#include "cfnoma/tensor.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace cfnoma
{

/// Closed-form MMSE statistics of the per-AP channel estimates.
///
/// For AP m, cluster n, user k:
///   theta_bar(m,n) = 1 + tau p_p sum_i beta(m,n,i)   (per-entry variance of hbar_mn)
///   c(m,n,k)       = sqrt(tau p_p) beta(m,n,k) / theta_bar(m,n)
///   theta(m,n,k)   = tau p_p beta(m,n,k)^2 / theta_bar(m,n)
///   a(m,n,k)       = sqrt((beta - theta) / theta_bar)
struct EstimationStats
{
    Tensor3 beta;
    Tensor3 c;
    Tensor3 theta;
    Tensor3 a;
    Table theta_bar;
    double tau_pp = 0.0; // pilot length times pilot power
};

EstimationStats estimation_stats(const Tensor3 &beta, std::size_t pilot_len, double pilot_power);

/// One small-scale realization. Per AP m the matrices are L x (N*K) for h, hhat
/// and eps (column n*K + k) and L x N for hbar (columns of the projected pilot
/// observation).
struct ChannelRealization
{
    std::size_t clusters = 0;
    std::size_t users = 0;
    std::vector<Eigen::MatrixXcd> h;
    std::vector<Eigen::MatrixXcd> hbar;
    std::vector<Eigen::MatrixXcd> hhat;
    std::vector<Eigen::MatrixXcd> eps;

    std::size_t aps() const noexcept { return h.size(); }
    std::size_t antennas() const noexcept { return h.empty() ? 0 : static_cast<std::size_t>(h.front().rows()); }
    Eigen::Index column(std::size_t n, std::size_t k) const noexcept
    {
        return static_cast<Eigen::Index>(n * users + k);
    }
};

/// Raw Rayleigh channels h_mnk ~ CN(0, beta_mnk I_L).
ChannelRealization draw_small_scale(const Tensor3 &beta, std::size_t antennas, std::uint64_t seed);

enum class PilotNoise
{
    on,
    off // test hook
};

/// Fills hbar: hbar_mn = sqrt(tau p_p) sum_k h_mnk + n_mn with n_mn ~ CN(0, I_L).
/// Orthonormal pilot projection is applied analytically.
void pilot_observation(ChannelRealization &channels, std::size_t pilot_len, double pilot_power, std::uint64_t seed,
                       PilotNoise noise = PilotNoise::on);

/// Fills hhat = c * hbar and eps = h - hhat.
void mmse_estimate(ChannelRealization &channels, const EstimationStats &stats);

} // namespace cfnoma
