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

#include "cfnoma/closed_form_rates.hpp"
#include "cfnoma/error.hpp"

#include <cmath>
#include <numeric>

namespace cfnoma
{

std::string_view to_string(RateSource s) noexcept
{
    switch (s)
    {
    case RateSource::closed_form: return "closed-form";
    case RateSource::monte_carlo: return "monte-carlo";
    case RateSource::det_equiv: return "det-equiv";
    }
    return "unknown";
}

namespace
{

void check_shapes(const EstimationStats &stats, const PowerAllocation &power)
{
    require(stats.theta.clusters() == power.clusters() && stats.theta.users() == power.users(),
            ErrorCode::contract_violation, "power allocation does not match the statistics layout");
}

double total_power(const PowerAllocation &power)
{
    return std::accumulate(power.p_cluster.begin(), power.p_cluster.end(), 0.0);
}

// Shared structure of the MRT and fpZF closed forms.
template <typename Residual>
Table linear_sinr(const EstimationStats &stats, const PowerAllocation &power, const Table &rho, double gain,
                  Residual residual)
{
    check_shapes(stats, power);
    const auto &th = stats.theta;
    const double p_all = total_power(power);
    Table gamma(th.clusters(), th.users());
    for (std::size_t n = 0; n < th.clusters(); ++n)
        for (std::size_t k = 0; k < th.users(); ++k)
        {
            double s = 0.0, leak = 0.0;
            for (std::size_t m = 0; m < th.aps(); ++m)
            {
                s += std::sqrt(th(m, n, k));
                leak += residual(m, n, k);
            }
            const double coherent = gain * s * s;
            const double den = coherent * intra_cluster_weight(power, rho, n, k) + p_all * leak + 1.0;
            gamma(n, k) = power.p(n, k) * coherent / den;
        }
    return gamma;
}

} // namespace

Table sinr_mrt_noma(const EstimationStats &stats, const PowerAllocation &power, const Table &rho,
                    std::size_t antennas)
{
    return linear_sinr(stats, power, rho, static_cast<double>(antennas),
                       [&](std::size_t m, std::size_t n, std::size_t k) { return stats.beta(m, n, k); });
}

Table sinr_fpzf_noma(const EstimationStats &stats, const PowerAllocation &power, const Table &rho,
                     std::size_t antennas)
{
    const std::size_t N = stats.theta.clusters();
    if (antennas <= N)
        fail(ErrorCode::precoder_infeasible, "fpZF needs L >= N + 1 antennas");
    return linear_sinr(stats, power, rho, static_cast<double>(antennas - N),
                       [&](std::size_t m, std::size_t n, std::size_t k) {
                           return stats.beta(m, n, k) - stats.theta(m, n, k);
                       });
}

Table sinr_oma(const EstimationStats &stats, const PowerAllocation &power, std::size_t antennas, Precoder precoder)
{
    check_shapes(stats, power);
    require(precoder != Precoder::mrzf, ErrorCode::contract_violation,
            "OMA closed forms exist for MRT and fpZF only");
    const auto &th = stats.theta;
    const std::size_t pilots = th.clusters() * th.users();
    require(th.users() == 1, ErrorCode::contract_violation, "OMA statistics must use one user per pilot");

    double gain = static_cast<double>(antennas);
    if (precoder == Precoder::fpzf)
    {
        if (antennas <= pilots)
            fail(ErrorCode::precoder_infeasible, "OMA fpZF needs L >= K N + 1 antennas");
        gain = static_cast<double>(antennas - pilots);
    }

    const double p_all = total_power(power);
    Table gamma(th.clusters(), th.users());
    for (std::size_t n = 0; n < th.clusters(); ++n)
        for (std::size_t k = 0; k < th.users(); ++k)
        {
            double s = 0.0, leak = 0.0;
            for (std::size_t m = 0; m < th.aps(); ++m)
            {
                s += std::sqrt(th(m, n, k));
                leak += precoder == Precoder::mrt ? stats.beta(m, n, k) : stats.beta(m, n, k) - th(m, n, k);
            }
            gamma(n, k) = gain * power.p(n, k) * s * s / (p_all * leak + 1.0);
        }
    return gamma;
}

double sinr_limit_large_L(const PowerAllocation &power, const Table &rho, std::size_t n, std::size_t k)
{
    const double den = intra_cluster_weight(power, rho, n, k);
    if (den == 0.0)
        return infinite_sinr;
    return power.p(n, k) / den;
}

RateReport assemble_report(const Table &gamma, std::size_t coherence_interval, std::size_t pilot_len,
                           RateSource source, Precoder precoder, Scheme scheme, SicMode sic)
{
    const double zeta = prelog_factor(coherence_interval, pilot_len);
    if (!(zeta > 0.0))
        fail(ErrorCode::prelog_infeasible, "pilot length " + std::to_string(pilot_len) +
                                               " leaves no data symbols in a coherence interval of " +
                                               std::to_string(coherence_interval));

    RateReport r;
    r.gamma = gamma;
    r.rate = Table(gamma.rows(), gamma.cols());
    r.per_cluster.assign(gamma.rows(), 0.0);
    r.prelog = zeta;
    r.source = source;
    r.precoder = precoder;
    r.scheme = scheme;
    r.sic = sic;

    for (std::size_t n = 0; n < gamma.rows(); ++n)
        for (std::size_t k = 0; k < gamma.cols(); ++k)
        {
            const double g = gamma(n, k);
            require(g >= 0.0, ErrorCode::contract_violation, "negative SINR");
            if (std::isinf(g))
            {
                r.rate(n, k) = infinite_sinr;
                ++r.infinite_users;
                continue;
            }
            r.rate(n, k) = zeta * std::log2(1.0 + g);
            r.per_cluster[n] += r.rate(n, k);
        }
    r.sum_rate = std::accumulate(r.per_cluster.begin(), r.per_cluster.end(), 0.0);
    return r;
}

} // namespace cfnoma
