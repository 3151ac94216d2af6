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

#include "cfnoma/pipeline.hpp"
#include "cfnoma/error.hpp"
#include "cfnoma/seeding.hpp"

namespace cfnoma
{

Layout make_layout(const Tensor3 &beta, Scheme scheme)
{
    const std::size_t M = beta.aps(), N = beta.clusters(), K = beta.users();
    Layout out;
    out.scheme = scheme;
    if (scheme == Scheme::noma)
    {
        out.beta = beta;
        out.pilot_len = N;
        return out;
    }
    out.beta = Tensor3(M, N * K, 1);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t k = 0; k < K; ++k)
                out.beta(m, n * K + k, 0) = beta(m, n, k);
    out.pilot_len = N * K;
    return out;
}

Table to_user_grid(const Table &per_layout, std::size_t clusters, std::size_t users, Scheme scheme)
{
    if (scheme == Scheme::noma)
        return per_layout;
    require(per_layout.rows() == clusters * users && per_layout.cols() == 1, ErrorCode::contract_violation,
            "OMA table has the wrong shape");
    Table out(clusters, users);
    for (std::size_t n = 0; n < clusters; ++n)
        for (std::size_t k = 0; k < users; ++k)
            out(n, k) = per_layout(n * users + k, 0);
    return out;
}

PreparedVariant prepare_variant(const SystemConfig &cfg, const Tensor3 &beta, const Variant &variant)
{
    PreparedVariant out;
    out.variant = variant;
    out.layout = make_layout(beta, variant.scheme);
    out.stats = estimation_stats(out.layout.beta, out.layout.pilot_len, cfg.pilot_power);
    const std::size_t N = out.layout.beta.clusters(), K = out.layout.beta.users();
    const std::size_t L = cfg.antennas_per_ap;

    Table metric;
    if (variant.precoder == Precoder::mrzf)
    {
        out.det_equiv = solve_det_equiv(out.stats.theta_bar, cfg.rzf_alpha, L);
        metric = ordering_metric_mrzf(out.stats, *out.det_equiv);
    }
    else
        metric = ordering_metric_linear(out.stats);

    const std::vector<double> single{1.0};
    const std::span<const double> split =
        variant.scheme == Scheme::noma ? std::span<const double>(cfg.power_split) : std::span<const double>(single);
    out.power = allocate_power(cfg.total_ap_power, split, order_users(metric));
    if (out.det_equiv)
        psi_and_upsilon(*out.det_equiv, out.power.p_cluster, L);

    const double rho = variant.sic == SicMode::perfect ? 1.0 : cfg.sic_correlation;
    out.rho = uniform_sic(N, K, rho);
    return out;
}

RateReport evaluate_closed_form(const SystemConfig &cfg, const PreparedVariant &p)
{
    const std::size_t L = cfg.antennas_per_ap;
    Table gamma;
    RateSource source = RateSource::closed_form;
    switch (p.variant.precoder)
    {
    case Precoder::mrt:
        gamma = p.variant.scheme == Scheme::noma ? sinr_mrt_noma(p.stats, p.power, p.rho, L)
                                                 : sinr_oma(p.stats, p.power, L, Precoder::mrt);
        break;
    case Precoder::fpzf:
        gamma = p.variant.scheme == Scheme::noma ? sinr_fpzf_noma(p.stats, p.power, p.rho, L)
                                                 : sinr_oma(p.stats, p.power, L, Precoder::fpzf);
        break;
    case Precoder::mrzf:
        gamma = sinr_mrzf_noma(*p.det_equiv, p.stats, p.power, p.rho);
        source = RateSource::det_equiv;
        break;
    }
    return assemble_report(gamma, cfg.coherence_interval, p.layout.pilot_len, source, p.variant.precoder,
                           p.variant.scheme, p.variant.sic);
}

RateReport evaluate_monte_carlo(const SystemConfig &cfg, const PreparedVariant &p, const McSettings &settings,
                                EffectiveGainSamples *samples_out)
{
    GainRequest req;
    req.precoder = p.variant.precoder;
    req.antennas = cfg.antennas_per_ap;
    req.pilot_len = p.layout.pilot_len;
    req.pilot_power = cfg.pilot_power;
    req.alpha = cfg.rzf_alpha;
    req.trials = settings.trials;
    req.seed = settings.seed;
    req.workers = settings.workers;

    Table psi;
    if (p.variant.precoder == Precoder::mrzf)
    {
        if (settings.mrzf_normalization == Normalization::empirical)
            psi = empirical_mrzf_norm(p.layout.beta, req.antennas, req.pilot_len, req.pilot_power, req.alpha,
                                      settings.psi_draws, derive_seed(settings.seed, SeedPurpose::psi_estimate));
        else
            psi = p.det_equiv->psi_o;
        req.psi = &psi;
    }

    auto samples = collect_gains(p.stats, req);
    auto report = ergodic_sum_rate(samples, p.power, p.rho, cfg.coherence_interval, p.layout.pilot_len,
                                   p.variant.precoder, p.variant.scheme, p.variant.sic);
    if (samples_out)
        *samples_out = std::move(samples);
    return report;
}

} // namespace cfnoma
