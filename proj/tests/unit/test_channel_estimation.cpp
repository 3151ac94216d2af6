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

#include "cfnoma/channel_estimation.hpp"
#include "cfnoma/error.hpp"
#include "cfnoma/scenario.hpp"
#include "cfnoma/seeding.hpp"

#include <cmath>
#include <complex>

using namespace cfnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

Tensor3 two_user_beta()
{
    Tensor3 beta(1, 1, 2);
    beta(0, 0, 0) = 0.5;
    beta(0, 0, 1) = 0.25;
    return beta;
}

Tensor3 small_beta()
{
    Tensor3 beta(2, 3, 2);
    const double v[] = {0.9, 0.4, 1.3, 0.2, 2.0, 0.7, 0.5, 1.1, 0.3, 0.8, 1.6, 0.6};
    std::copy(std::begin(v), std::end(v), beta.flat().begin());
    return beta;
}

} // namespace

TEST_CASE("estimation statistics for the worked two-user example", "[estimation]")
{
    const auto s = estimation_stats(two_user_beta(), 4, 1.0);
    CHECK(s.tau_pp == 4.0);
    CHECK_THAT(s.theta_bar(0, 0), WithinRel(4.0, 1e-15));
    CHECK_THAT(s.c(0, 0, 0), WithinRel(0.25, 1e-15));
    CHECK_THAT(s.theta(0, 0, 0), WithinRel(0.25, 1e-15));
    CHECK_THAT(s.a(0, 0, 0), WithinRel(0.25, 1e-15));
}

TEST_CASE("no pilot energy means no estimate", "[estimation]")
{
    const auto s = estimation_stats(two_user_beta(), 4, 0.0);
    for (std::size_t k = 0; k < 2; ++k)
    {
        CHECK(s.theta(0, 0, k) == 0.0);
        CHECK(s.c(0, 0, k) == 0.0);
        CHECK_THAT(s.a(0, 0, k) * s.a(0, 0, k), WithinRel(s.beta(0, 0, k), 1e-15));
    }
}

TEST_CASE("strong pilots estimate a lone user perfectly", "[estimation]")
{
    Tensor3 beta(1, 1, 1, 0.3);
    const auto s = estimation_stats(beta, 1, 1e12);
    CHECK_THAT(s.theta(0, 0, 0), WithinRel(0.3, 1e-9));
}

TEST_CASE("estimation invariants hold on a random drop", "[estimation]")
{
    const auto drop = generate_drop(SystemConfig{}, 21);
    const auto s = estimation_stats(drop.beta, 10, 0.1);
    const double root = std::sqrt(s.tau_pp);
    for (std::size_t m = 0; m < 25; ++m)
        for (std::size_t n = 0; n < 10; ++n)
            for (std::size_t k = 0; k < 2; ++k)
            {
                const double b = s.beta(m, n, k), th = s.theta(m, n, k);
                CHECK(th >= 0.0);
                CHECK(th <= b);
                CHECK_THAT(th, WithinRel(root * b * s.c(m, n, k), 1e-14));
                CHECK_THAT(s.a(m, n, k) * s.a(m, n, k) * s.theta_bar(m, n), WithinRel(b - th, 1e-9));
            }
}

TEST_CASE("small-scale fading has the large-scale power", "[estimation]")
{
    const auto beta = small_beta();
    const std::size_t L = 4, draws = 10000;
    Tensor3 acc(2, 3, 2);
    for (std::size_t d = 0; d < draws; ++d)
    {
        const auto ch = draw_small_scale(beta, L, derive_seed(5, SeedPurpose::small_scale, d));
        for (std::size_t m = 0; m < 2; ++m)
            for (std::size_t n = 0; n < 3; ++n)
                for (std::size_t k = 0; k < 2; ++k)
                    acc(m, n, k) += ch.h[m].col(ch.column(n, k)).squaredNorm() / static_cast<double>(L);
    }
    for (std::size_t i = 0; i < beta.size(); ++i)
        CHECK_THAT(acc.flat()[i] / static_cast<double>(draws), WithinRel(beta.flat()[i], 0.03));
}

TEST_CASE("zero beta gives zero channels and seeds reproduce", "[estimation]")
{
    const auto zero = draw_small_scale(Tensor3(2, 2, 2, 0.0), 3, 9);
    for (const auto &h : zero.h)
        CHECK(h.isZero(0.0));
    const auto a = draw_small_scale(small_beta(), 5, 77);
    const auto b = draw_small_scale(small_beta(), 5, 77);
    for (std::size_t m = 0; m < a.aps(); ++m)
        CHECK(a.h[m] == b.h[m]);
}

TEST_CASE("noiseless single-user pilot observation scales the channel", "[estimation]")
{
    Tensor3 beta(3, 2, 1, 0.8);
    auto ch = draw_small_scale(beta, 6, 1);
    pilot_observation(ch, 2, 0.5, 2, PilotNoise::off);
    for (std::size_t m = 0; m < 3; ++m)
        CHECK(ch.hbar[m].isApprox(std::sqrt(2 * 0.5) * ch.h[m], 1e-15));
}

TEST_CASE("pilot observation covariance and column independence", "[estimation]")
{
    const auto beta = small_beta();
    const std::size_t pilots = 3, draws = 10000;
    const double pp = 0.7;
    const auto stats = estimation_stats(beta, pilots, pp);
    Table var(2, 3);
    std::complex<double> cross{};
    for (std::size_t d = 0; d < draws; ++d)
    {
        auto ch = draw_small_scale(beta, 1, derive_seed(8, SeedPurpose::small_scale, d));
        pilot_observation(ch, pilots, pp, derive_seed(8, SeedPurpose::pilot_noise, d));
        for (std::size_t m = 0; m < 2; ++m)
            for (std::size_t n = 0; n < 3; ++n)
                var(m, n) += std::norm(ch.hbar[m](0, static_cast<Eigen::Index>(n)));
        cross += ch.hbar[0](0, 0) * std::conj(ch.hbar[0](0, 1));
    }
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t n = 0; n < 3; ++n)
            CHECK_THAT(var(m, n) / draws, WithinRel(stats.theta_bar(m, n), 0.03));

    // |mean of products| has standard deviation sqrt(theta_bar_0 theta_bar_1 / draws).
    const double band = 3.0 * std::sqrt(stats.theta_bar(0, 0) * stats.theta_bar(0, 1) / draws);
    CHECK(std::abs(cross) / draws < band);
}

TEST_CASE("pilot observation rejects too-short pilots", "[estimation]")
{
    auto ch = draw_small_scale(small_beta(), 2, 1);
    try
    {
        pilot_observation(ch, 2, 0.1, 1);
        FAIL("expected invalid-config");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::invalid_config);
    }
}

TEST_CASE("MMSE estimates are parallel within a cluster and orthogonal to the error", "[estimation]")
{
    const auto beta = small_beta();
    const std::size_t pilots = 3, draws = 10000;
    const double pp = 0.7;
    const auto stats = estimation_stats(beta, pilots, pp);
    Tensor3 var(2, 3, 2);
    std::complex<double> cov{};
    for (std::size_t d = 0; d < draws; ++d)
    {
        auto ch = draw_small_scale(beta, 1, derive_seed(4, SeedPurpose::small_scale, d));
        pilot_observation(ch, pilots, pp, derive_seed(4, SeedPurpose::pilot_noise, d));
        mmse_estimate(ch, stats);
        for (std::size_t m = 0; m < 2; ++m)
        {
            CHECK(ch.h[m].isApprox(ch.hhat[m] + ch.eps[m], 1e-14));
            for (std::size_t n = 0; n < 3; ++n)
            {
                const auto a = ch.hhat[m](0, ch.column(n, 0));
                const auto b = ch.hhat[m](0, ch.column(n, 1));
                if (d == 0)
                    CHECK_THAT(std::abs(a / b), WithinRel(beta(m, n, 0) / beta(m, n, 1), 1e-12));
                for (std::size_t k = 0; k < 2; ++k)
                    var(m, n, k) += std::norm(ch.hhat[m](0, ch.column(n, k)));
            }
        }
        cov += ch.hhat[0](0, 0) * std::conj(ch.eps[0](0, 0));
    }
    for (std::size_t i = 0; i < var.size(); ++i)
        CHECK_THAT(var.flat()[i] / draws, WithinRel(stats.theta.flat()[i], 0.03));
    const double err_var = beta(0, 0, 0) - stats.theta(0, 0, 0);
    const double band = 3.0 * std::sqrt(stats.theta(0, 0, 0) * err_var / draws);
    CHECK(std::abs(cov) / draws < band);
}

TEST_CASE("MMSE estimation checks shapes", "[estimation]")
{
    auto ch = draw_small_scale(small_beta(), 2, 1);
    pilot_observation(ch, 3, 0.1, 1);
    const auto wrong = estimation_stats(Tensor3(2, 2, 2, 1.0), 3, 0.1);
    try
    {
        mmse_estimate(ch, wrong);
        FAIL("expected contract violation");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::contract_violation);
    }
}
