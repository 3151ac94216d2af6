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
#include "cfnoma/tensor.hpp"

#include <Eigen/Dense>

#include <span>
#include <string_view>
#include <vector>

namespace cfnoma
{

enum class Precoder
{
    mrt,
    fpzf,
    mrzf
};

enum class Normalization
{
    analytic,
    deterministic_equivalent,
    empirical
};

std::string_view to_string(Precoder p) noexcept;
Precoder parse_precoder(std::string_view text);

// Per-AP precoders. Each takes only AP-local quantities: the L x N projected
// pilot matrix of that AP and its own statistics. Every column w_mn has unit
// expected squared norm.

/// w_mn = hbar_mn / sqrt(L theta_bar_mn).
Eigen::MatrixXcd mrt_precoder(const Eigen::MatrixXcd &hbar, std::span<const double> theta_bar);

/// w_mn = Hbar (Hbar^H Hbar)^-1 e_n sqrt((L - N) theta_bar_mn). Needs L >= N + 1.
Eigen::MatrixXcd fpzf_precoder(const Eigen::MatrixXcd &hbar, std::span<const double> theta_bar);

/// w_mn = (Hbar Hbar^H + L alpha I)^-1 hbar_mn / sqrt(psi_mn).
Eigen::MatrixXcd mrzf_precoder(const Eigen::MatrixXcd &hbar, double alpha, std::span<const double> psi);

struct PrecoderSet
{
    std::vector<Eigen::MatrixXcd> w; // per AP, L x N
    Precoder scheme = Precoder::mrt;
    Normalization normalization = Normalization::analytic;
};

/// Builds all APs' precoders. psi (M x N) is only read for mRZF.
PrecoderSet build_precoders(Precoder scheme, const std::vector<Eigen::MatrixXcd> &hbar, const Table &theta_bar,
                            double alpha = 0.0, const Table *psi = nullptr,
                            Normalization normalization = Normalization::analytic);

/// Sample mean of ||(Hbar Hbar^H + L alpha I)^-1 hbar_mn||^2 over independent
/// pilot observations; the empirical alternative to the deterministic equivalent.
Table empirical_mrzf_norm(const Tensor3 &beta, std::size_t antennas, std::size_t pilot_len, double pilot_power,
                          double alpha, std::size_t draws, std::uint64_t seed);

} // namespace cfnoma
