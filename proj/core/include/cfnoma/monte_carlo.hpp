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
#include "cfnoma/noma_control.hpp"
#include "cfnoma/precoders.hpp"
#include "cfnoma/tensor.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace cfnoma
{

struct GainRequest
{
    Precoder precoder = Precoder::mrt;
    std::size_t antennas = 0;
    std::size_t pilot_len = 0;
    double pilot_power = 0.0;
    double alpha = 0.0;
    const Table *psi = nullptr; // mRZF normalization, M x N
    std::size_t trials = 2000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    PilotNoise pilot_noise = PilotNoise::on;
};

struct EffectiveGainSamples
{
    std::size_t trials = 0;
    std::size_t clusters = 0;
    std::size_t users = 0;
    // eta[((t * N + n') * N + n) * K + k] = sum_m h_mnk^H w_mn'
    std::vector<std::complex<double>> eta;
    std::vector<std::uint64_t> trial_seeds;
    double max_nulling_leak = 0.0; // max over trials of |hhat_mnk^H w_mn'|, n' != n
    Table mean_precoder_power;     // M x N, sample mean of ||w_mn||^2

    std::complex<double> at(std::size_t t, std::size_t n_prime, std::size_t n, std::size_t k) const noexcept
    {
        return eta[((t * clusters + n_prime) * clusters + n) * users + k];
    }
};

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) noexcept;

EffectiveGainSamples collect_gains(const EstimationStats &stats, const GainRequest &request);

/// Sample-mean estimate of the SINR with the symbol expectation taken analytically.
Table empirical_sinr(const EffectiveGainSamples &samples, const PowerAllocation &power, const Table &rho);

RateReport ergodic_sum_rate(const EffectiveGainSamples &samples, const PowerAllocation &power, const Table &rho,
                            std::size_t coherence_interval, std::size_t pilot_len, Precoder precoder, Scheme scheme,
                            SicMode sic);

} // namespace cfnoma
