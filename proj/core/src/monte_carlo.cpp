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

#include "cfnoma/monte_carlo.hpp"
#include "cfnoma/error.hpp"
#include "cfnoma/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace cfnoma
{

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) noexcept
{
    return derive_seed(seed, SeedPurpose::small_scale, trial);
}

namespace
{

struct TrialOutput
{
    double leak = 0.0;
    Table w_power;
};

TrialOutput run_trial(const EstimationStats &stats, const GainRequest &req, std::uint64_t seed,
                      std::complex<double> *eta)
{
    const std::size_t M = stats.beta.aps(), N = stats.beta.clusters(), K = stats.beta.users();
    auto ch = draw_small_scale(stats.beta, req.antennas, derive_seed(seed, SeedPurpose::small_scale));
    pilot_observation(ch, req.pilot_len, req.pilot_power, derive_seed(seed, SeedPurpose::pilot_noise),
                      req.pilot_noise);
    const auto set = build_precoders(req.precoder, ch.hbar, stats.theta_bar, req.alpha, req.psi);

    TrialOutput out;
    out.w_power = Table(M, N);
    std::fill(eta, eta + N * N * K, std::complex<double>{});
    for (std::size_t m = 0; m < M; ++m)
    {
        const auto &w = set.w[m];
        const Eigen::MatrixXcd g = ch.h[m].adjoint() * w; // NK x N
        for (std::size_t np = 0; np < N; ++np)
            for (std::size_t n = 0; n < N; ++n)
                for (std::size_t k = 0; k < K; ++k)
                    eta[(np * N + n) * K + k] += g(ch.column(n, k), static_cast<Eigen::Index>(np));

        if (req.precoder == Precoder::fpzf)
        {
            const Eigen::MatrixXcd gh = ch.hbar[m].adjoint() * w;
            for (std::size_t n = 0; n < N; ++n)
                for (std::size_t np = 0; np < N; ++np)
                {
                    if (n == np)
                        continue;
                    const double mag = std::abs(gh(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(np)));
                    for (std::size_t k = 0; k < K; ++k)
                        out.leak = std::max(out.leak, stats.c(m, n, k) * mag);
                }
        }
        for (std::size_t n = 0; n < N; ++n)
            out.w_power(m, n) = w.col(static_cast<Eigen::Index>(n)).squaredNorm();
    }
    return out;
}

} // namespace

EffectiveGainSamples collect_gains(const EstimationStats &stats, const GainRequest &req)
{
    require(req.trials > 0, ErrorCode::invalid_config, "need at least one trial");
    const std::size_t M = stats.beta.aps(), N = stats.beta.clusters(), K = stats.beta.users();
    if (req.precoder == Precoder::fpzf && req.antennas <= N)
        fail(ErrorCode::precoder_infeasible, "fpZF needs L >= N + 1 antennas");

    EffectiveGainSamples s;
    s.trials = req.trials;
    s.clusters = N;
    s.users = K;
    s.eta.assign(req.trials * N * N * K, {});
    s.trial_seeds.resize(req.trials);
    for (std::size_t t = 0; t < req.trials; ++t)
        s.trial_seeds[t] = trial_seed(req.seed, t);

    std::vector<TrialOutput> outputs(req.trials);
    const std::size_t stride = N * N * K;
    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t)
            outputs[t] = run_trial(stats, req, s.trial_seeds[t], s.eta.data() + t * stride);
    };

    const std::size_t workers = std::clamp<std::size_t>(req.workers, 1, req.trials);
    if (workers == 1)
        work(0, req.trials);
    else
    {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        const std::size_t chunk = (req.trials + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
        {
            const std::size_t begin = w * chunk, end = std::min(req.trials, begin + chunk);
            pool.emplace_back([&, begin, end] {
                try
                {
                    work(begin, end);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            });
        }
        for (auto &th : pool)
            th.join();
        if (error)
            std::rethrow_exception(error);
    }

    s.mean_precoder_power = Table(M, N);
    for (const auto &o : outputs)
    {
        s.max_nulling_leak = std::max(s.max_nulling_leak, o.leak);
        for (std::size_t i = 0; i < M * N; ++i)
            s.mean_precoder_power.flat()[i] += o.w_power.flat()[i];
    }
    for (auto &v : s.mean_precoder_power.flat())
        v /= static_cast<double>(req.trials);
    return s;
}

Table empirical_sinr(const EffectiveGainSamples &s, const PowerAllocation &power, const Table &rho)
{
    require(s.trials >= 2, ErrorCode::invalid_config, "empirical SINR needs at least two trials");
    const std::size_t N = s.clusters, K = s.users;
    require(power.clusters() == N && power.users() == K, ErrorCode::contract_violation,
            "power allocation does not match the samples");
    const double T = static_cast<double>(s.trials);

    Table gamma(N, K);
    bool any_nonzero = false;
    for (std::size_t n = 0; n < N; ++n)
    {
        const auto &order = power.ordering[n];
        for (std::size_t pos = 0; pos < K; ++pos)
        {
            const std::size_t k = order[pos];
            std::complex<double> mean{};
            double second = 0.0, cross = 0.0;
            for (std::size_t t = 0; t < s.trials; ++t)
            {
                const auto own = s.at(t, n, n, k);
                mean += own;
                second += std::norm(own);
                for (std::size_t np = 0; np < N; ++np)
                    if (np != n)
                        cross += power.p_cluster[np] * std::norm(s.at(t, np, n, k));
            }
            mean /= T;
            second /= T;
            cross /= T;
            const double mean_sq = std::norm(mean);
            if (second > 0.0 || cross > 0.0)
                any_nonzero = true;

            double den = power.p(n, k) * (second - mean_sq) + cross + 1.0;
            for (std::size_t j = 0; j < pos; ++j)
                den += power.p(n, order[j]) * second;
            for (std::size_t j = pos + 1; j < K; ++j)
            {
                const std::size_t i = order[j];
                den += power.p(n, i) * (second + (1.0 - 2.0 * rho(n, i)) * mean_sq);
            }
            gamma(n, k) = power.p(n, k) * mean_sq / den;
        }
    }
    if (!any_nonzero)
        fail(ErrorCode::undefined_sinr, "all effective-gain samples are zero");
    return gamma;
}

RateReport ergodic_sum_rate(const EffectiveGainSamples &samples, const PowerAllocation &power, const Table &rho,
                            std::size_t coherence_interval, std::size_t pilot_len, Precoder precoder, Scheme scheme,
                            SicMode sic)
{
    return assemble_report(empirical_sinr(samples, power, rho), coherence_interval, pilot_len,
                           RateSource::monte_carlo, precoder, scheme, sic);
}

} // namespace cfnoma
