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
#include "cfnoma/config.hpp"
#include "cfnoma/noma_control.hpp"
#include "cfnoma/precoders.hpp"
#include "cfnoma/tensor.hpp"

#include <limits>
#include <string_view>
#include <vector>

namespace cfnoma
{

enum class RateSource
{
    closed_form,
    monte_carlo,
    det_equiv
};

std::string_view to_string(RateSource s) noexcept;

struct RateReport
{
    Table gamma; // N x K linear SINR
    Table rate;  // N x K bits/s/Hz
    std::vector<double> per_cluster;
    double sum_rate = 0.0;
    double prelog = 0.0;
    std::size_t infinite_users = 0; // excluded from per_cluster and sum_rate
    RateSource source = RateSource::closed_form;
    Precoder precoder = Precoder::mrt;
    Scheme scheme = Scheme::noma;
    SicMode sic = SicMode::imperfect;
};

inline constexpr double infinite_sinr = std::numeric_limits<double>::infinity();

/// MRT closed form:
///   gamma = L p_nk S^2 / (L S^2 w_intra + (sum_n' p_n') sum_m beta_mnk + 1),  S = sum_m sqrt(theta_mnk).
Table sinr_mrt_noma(const EstimationStats &stats, const PowerAllocation &power, const Table &rho,
                    std::size_t antennas);

/// fpZF closed form: array gain L - N and residual leakage through beta - theta.
Table sinr_fpzf_noma(const EstimationStats &stats, const PowerAllocation &power, const Table &rho,
                     std::size_t antennas);

/// OMA closed forms. stats must describe the orthogonal-pilot layout (one user
/// per pilot); the fpZF array gain is L minus the number of pilots.
Table sinr_oma(const EstimationStats &stats, const PowerAllocation &power, std::size_t antennas, Precoder precoder);

/// Large-L limit for user k of cluster n; +inf when nothing interferes after SIC.
double sinr_limit_large_L(const PowerAllocation &power, const Table &rho, std::size_t n, std::size_t k);

/// Applies zeta = (tau_c - tau) / tau_c and sums. Throws prelog_infeasible when zeta <= 0.
RateReport assemble_report(const Table &gamma, std::size_t coherence_interval, std::size_t pilot_len,
                           RateSource source, Precoder precoder, Scheme scheme, SicMode sic);

} // namespace cfnoma
