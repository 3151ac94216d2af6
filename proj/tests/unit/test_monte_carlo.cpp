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

#include "catch_amalgamated.hpp"

#include "cfnoma/closed_form_rates.hpp"
#include "cfnoma/error.hpp"
#include "cfnoma/monte_carlo.hpp"
#include "cfnoma/scenario.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace cfnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

struct Setup
{
    SystemConfig cfg;
    EstimationStats stats;
    PowerAllocation power;
    Table rho;

    explicit Setup(std::uint64_t seed, std::size_t L = 8)
    {
        cfg.antennas_per_ap = L;
        stats = estimation_stats(generate_drop(cfg, seed).beta, cfg.num_clusters, cfg.pilot_power);
        power = allocate_power(cfg.total_ap_power, cfg.power_split, order_users(ordering_metric_linear(stats)));
        rho = uniform_sic(cfg.num_clusters, cfg.users_per_cluster, cfg.sic_correlation);
    }

    GainRequest request(Precoder p, std::size_t trials, std::uint64_t seed, unsigned workers = 1) const
    {
        GainRequest r;
        r.precoder = p;
        r.antennas = cfg.antennas_per_ap;
        r.pilot_len = cfg.num_clusters;
        r.pilot_power = cfg.pilot_power;
        r.alpha = cfg.rzf_alpha;
        r.trials = trials;
        r.seed = seed;
        r.workers = workers;
        return r;
    }
};

// One AP, one user, MRT: simulated with its own generator and moments.
double scalar_oracle_sinr(double beta, double pp, double p, std::size_t L, std::size_t trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    const double theta_bar = 1.0 + pp * beta;
    std::complex<double> mean{};
    double second = 0.0;
    for (std::size_t t = 0; t < trials; ++t)
    {
        std::complex<double> eta{};
        for (std::size_t l = 0; l < L; ++l)
        {
            const std::complex<double> h(g(rng) * std::sqrt(beta), g(rng) * std::sqrt(beta));
            const std::complex<double> noise(g(rng), g(rng));
            const std::complex<double> obs = std::sqrt(pp) * h + noise;
            eta += std::conj(h) * obs / std::sqrt(static_cast<double>(L) * theta_bar);
        }
        mean += eta;
        second += std::norm(eta);
    }
    mean /= static_cast<double>(trials);
    second /= static_cast<double>(trials);
    return p * std::norm(mean) / (p * (second - std::norm(mean)) + 1.0);
}

} // namespace

TEST_CASE("gain samples are reproducible and independent of the worker count", "[mc]")
{
    Setup s(1);
    const auto a = collect_gains(s.stats, s.request(Precoder::mrt, 40, 99, 1));
    const auto b = collect_gains(s.stats, s.request(Precoder::mrt, 40, 99, 1));
    const auto c = collect_gains(s.stats, s.request(Precoder::mrt, 40, 99, 4));
    const auto d = collect_gains(s.stats, s.request(Precoder::mrt, 40, 100, 1));
    CHECK(a.eta == b.eta);
    CHECK(a.eta == c.eta);
    CHECK(a.trial_seeds == c.trial_seeds);
    CHECK(a.eta != d.eta);
    for (std::size_t t = 0; t < 40; ++t)
        CHECK(a.trial_seeds[t] == trial_seed(99, t));
}

TEST_CASE("MRT mean effective gain matches sqrt(L theta)", "[mc]")
{
    Setup s(2);
    const auto g = collect_gains(s.stats, s.request(Precoder::mrt, 10000, 5, 4));
    for (std::size_t n = 0; n < 10; ++n)
        for (std::size_t k = 0; k < 2; ++k)
        {
            double expect = 0.0;
            for (std::size_t m = 0; m < s.stats.theta.aps(); ++m)
                expect += std::sqrt(8.0 * s.stats.theta(m, n, k));
            std::complex<double> mean{};
            for (std::size_t t = 0; t < g.trials; ++t)
                mean += g.at(t, n, n, k);
            mean /= static_cast<double>(g.trials);
            CHECK_THAT(mean.real(), WithinRel(expect, 0.02));
            CHECK(std::abs(mean.imag()) < 0.02 * expect);
        }
    for (double w : g.mean_precoder_power.flat())
        CHECK_THAT(w, WithinRel(1.0, 0.05));
}

TEST_CASE("fpZF nulls other clusters on the estimates", "[mc]")
{
    Setup s(3, 16);
    const auto g = collect_gains(s.stats, s.request(Precoder::fpzf, 200, 1));
    CHECK(g.max_nulling_leak <= 1e-10);
    Setup square(3, 10);
    CHECK_THROWS_AS(collect_gains(square.stats, square.request(Precoder::fpzf, 2, 1)), Error);
}

TEST_CASE("empirical SINR agrees with the closed forms", "[mc]")
{
    Setup mrt(4, 8), zf(4, 16);
    const auto gm = empirical_sinr(collect_gains(mrt.stats, mrt.request(Precoder::mrt, 2000, 7, 4)), mrt.power, mrt.rho);
    const auto gz = empirical_sinr(collect_gains(zf.stats, zf.request(Precoder::fpzf, 2000, 7, 4)), zf.power, zf.rho);
    const auto cm = sinr_mrt_noma(mrt.stats, mrt.power, mrt.rho, 8);
    const auto cz = sinr_fpzf_noma(zf.stats, zf.power, zf.rho, 16);
    for (std::size_t i = 0; i < gm.flat().size(); ++i)
    {
        CHECK_THAT(gm.flat()[i], WithinRel(cm.flat()[i], 0.04));
        CHECK_THAT(gz.flat()[i], WithinRel(cz.flat()[i], 0.04));
    }
}

TEST_CASE("single-user MC matches an independent simulation", "[mc]")
{
    const double beta = 2.0, pp = 0.5, p = 1.5;
    const std::size_t L = 6, trials = 20000;
    Tensor3 b(1, 1, 1, beta);
    const auto stats = estimation_stats(b, 1, pp);
    const auto power = allocate_power(p, std::vector<double>{1.0}, Ordering{{0}});
    GainRequest r;
    r.antennas = L;
    r.pilot_len = 1;
    r.pilot_power = pp;
    r.trials = trials;
    r.seed = 31;
    const auto mc = empirical_sinr(collect_gains(stats, r), power, Table(1, 1, 0.1))(0, 0);
    const double oracle = scalar_oracle_sinr(beta, pp, p, L, trials, 8);
    const double theta = pp * beta * beta / (1.0 + pp * beta);
    const double exact = p * static_cast<double>(L) * theta / (p * beta + 1.0);
    CHECK_THAT(oracle, WithinRel(exact, 0.03));
    CHECK_THAT(mc, WithinRel(exact, 0.03));
}

TEST_CASE("perfect SIC removes the weaker users' interference", "[mc]")
{
    Setup s(6);
    const auto g = collect_gains(s.stats, s.request(Precoder::mrt, 200, 2));
    const auto perfect = empirical_sinr(g, s.power, Table(10, 2, 1.0));
    const auto imperfect = empirical_sinr(g, s.power, s.rho);
    for (std::size_t n = 0; n < 10; ++n)
    {
        const std::size_t strong = s.power.ordering[n][0], weak = s.power.ordering[n][1];
        CHECK(perfect(n, strong) > imperfect(n, strong));
        CHECK(perfect(n, weak) == imperfect(n, weak));
    }
}

TEST_CASE("degenerate Monte Carlo inputs", "[mc]")
{
    Setup s(7);
    const auto g = collect_gains(s.stats, s.request(Precoder::mrt, 20, 3));
    const auto silent = allocate_power(0.0, s.cfg.power_split, s.power.ordering);
    const auto quiet = empirical_sinr(g, silent, s.rho);
    for (double x : quiet.flat())
        CHECK(x == 0.0);

    const auto one = collect_gains(s.stats, s.request(Precoder::mrt, 1, 3));
    CHECK_THROWS_AS(empirical_sinr(one, s.power, s.rho), Error);

    auto req = s.request(Precoder::mrt, 0, 3);
    CHECK_THROWS_AS(collect_gains(s.stats, req), Error);

    const auto dark = estimation_stats(Tensor3(2, 1, 1, 0.0), 1, 0.1);
    GainRequest r;
    r.antennas = 4;
    r.pilot_len = 1;
    r.pilot_power = 0.1;
    r.trials = 10;
    try
    {
        empirical_sinr(collect_gains(dark, r), allocate_power(1.0, std::vector<double>{1.0}, Ordering{{0}}),
                       Table(1, 1, 0.0));
        FAIL("expected undefined_sinr");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::undefined_sinr);
    }
}

TEST_CASE("ergodic sum rate applies the prelog", "[mc]")
{
    Setup s(8);
    const auto g = collect_gains(s.stats, s.request(Precoder::mrt, 100, 4));
    const auto r = ergodic_sum_rate(g, s.power, s.rho, 56, 10, Precoder::mrt, Scheme::noma, SicMode::imperfect);
    const auto gamma = empirical_sinr(g, s.power, s.rho);
    double sum = 0.0;
    for (double x : gamma.flat())
        sum += std::log2(1.0 + x);
    CHECK(r.source == RateSource::monte_carlo);
    CHECK_THAT(r.sum_rate, WithinRel(sum * 46.0 / 56.0, 1e-12));
}
