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

#include "cfnoma/det_equiv.hpp"
#include "cfnoma/error.hpp"

#include <algorithm>
#include <cmath>

namespace cfnoma
{

namespace
{

double resolvent_scale(std::span<const double> theta_bar, std::span<const double> e, double alpha, double L)
{
    double s = 0.0;
    for (std::size_t j = 0; j < theta_bar.size(); ++j)
        s += theta_bar[j] / (1.0 + e[j]);
    return 1.0 / (s / L + alpha);
}

void fill_psi(DetEquivState &state, double L)
{
    const std::size_t M = state.e.rows(), N = state.e.cols();
    state.psi_o = Table(M, N);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < N; ++n)
        {
            const double d = 1.0 + state.e(m, n);
            state.psi_o(m, n) = state.e_prime(m, n) / (L * d * d);
        }
}

} // namespace

FixedPoint solve_fixed_point(const Table &theta_bar, double alpha, std::size_t antennas, FixedPointOptions options)
{
    require(alpha > 0.0, ErrorCode::invalid_config, "alpha must be > 0");
    require(options.tol > 0.0, ErrorCode::invalid_config, "fixed-point tolerance must be > 0");
    require(antennas > 0, ErrorCode::invalid_config, "need at least one antenna");
    const std::size_t M = theta_bar.rows(), N = theta_bar.cols();
    const double L = static_cast<double>(antennas);

    FixedPoint fp;
    fp.e = Table(M, N, 1.0 / alpha);
    fp.t.assign(M, 0.0);
    std::vector<double> next(N);
    for (std::size_t m = 0; m < M; ++m)
    {
        auto e = fp.e.row(m);
        const auto tb = theta_bar.row(m);
        int it = 0;
        double res = 0.0;
        for (;;)
        {
            const double t = resolvent_scale(tb, e, alpha, L);
            res = 0.0;
            for (std::size_t n = 0; n < N; ++n)
            {
                next[n] = tb[n] * t;
                res = std::max(res, std::abs(next[n] - e[n]));
            }
            std::copy(next.begin(), next.end(), e.begin());
            ++it;
            if (res <= options.tol)
                break;
            if (it >= options.max_iter || !std::isfinite(res))
                throw ConvergenceError("fixed point did not converge at AP " + std::to_string(m), res, it);
        }
        fp.t[m] = resolvent_scale(tb, e, alpha, L);
        for (std::size_t n = 0; n < N; ++n)
            res = std::max(res, std::abs(e[n] - tb[n] * fp.t[m]));
        fp.iterations = std::max(fp.iterations, it);
        fp.residual = std::max(fp.residual, res);
    }
    return fp;
}

Eigen::MatrixXd j_matrix(std::span<const double> theta_bar, std::span<const double> e, double t,
                         std::size_t antennas)
{
    const auto N = static_cast<Eigen::Index>(theta_bar.size());
    const double L = static_cast<double>(antennas);
    Eigen::MatrixXd J(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j)
        {
            const double d = 1.0 + e[static_cast<std::size_t>(j)];
            J(i, j) = theta_bar[static_cast<std::size_t>(i)] * theta_bar[static_cast<std::size_t>(j)] * t * t /
                      (L * d * d);
        }
    return J;
}

void derivative_terms(DetEquivState &state, const Table &theta_bar, std::size_t antennas)
{
    const std::size_t M = theta_bar.rows(), N = theta_bar.cols();
    require(state.e.rows() == M && state.e.cols() == N && state.t.size() == M, ErrorCode::contract_violation,
            "fixed point does not match theta_bar");
    state.e_prime = Table(M, N);
    state.e_prime_dir = Tensor3(M, N, N);
    const auto n_idx = static_cast<Eigen::Index>(N);

    for (std::size_t m = 0; m < M; ++m)
    {
        const double t = state.t[m];
        const auto tb = theta_bar.row(m);
        const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n_idx, n_idx) - j_matrix(tb, state.e.row(m), t, antennas);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (N > 0 && (!lu.isInvertible() || lu.rcond() < 1e-14))
            fail(ErrorCode::ill_conditioned, "I - J is singular at AP " + std::to_string(m));

        Eigen::MatrixXd rhs(n_idx, n_idx + 1);
        for (Eigen::Index i = 0; i < n_idx; ++i)
        {
            const double v = tb[static_cast<std::size_t>(i)] * t * t;
            rhs(i, 0) = v;
            for (Eigen::Index n = 0; n < n_idx; ++n)
                rhs(i, n + 1) = v * tb[static_cast<std::size_t>(n)];
        }
        const Eigen::MatrixXd sol = lu.solve(rhs);
        for (std::size_t i = 0; i < N; ++i)
        {
            const auto ii = static_cast<Eigen::Index>(i);
            state.e_prime(m, i) = sol(ii, 0);
            for (std::size_t n = 0; n < N; ++n)
                state.e_prime_dir(m, n, i) = sol(ii, static_cast<Eigen::Index>(n) + 1);
        }
    }
}

void psi_and_upsilon(DetEquivState &state, std::span<const double> p_cluster, std::size_t antennas)
{
    const std::size_t M = state.e.rows(), N = state.e.cols();
    require(p_cluster.size() == N, ErrorCode::contract_violation, "one power per cluster expected");
    const double L = static_cast<double>(antennas);
    fill_psi(state, L);
    state.upsilon = Table(M, N);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < N; ++n)
        {
            double s = 0.0;
            for (std::size_t q = 0; q < N; ++q)
            {
                if (q == n)
                    continue;
                const double d = 1.0 + state.e(m, q);
                s += p_cluster[q] * state.e_prime_dir(m, n, q) / (state.psi_o(m, q) * d * d);
            }
            state.upsilon(m, n) = s / L;
        }
}

DetEquivState solve_det_equiv(const Table &theta_bar, double alpha, std::size_t antennas, FixedPointOptions options)
{
    auto fp = solve_fixed_point(theta_bar, alpha, antennas, options);
    DetEquivState state;
    state.e = std::move(fp.e);
    state.t = std::move(fp.t);
    state.iterations = fp.iterations;
    state.residual = fp.residual;
    derivative_terms(state, theta_bar, antennas);
    fill_psi(state, static_cast<double>(antennas));
    return state;
}

Table sinr_mrzf_noma(const DetEquivState &state, const EstimationStats &stats, const PowerAllocation &power,
                     const Table &rho)
{
    const auto &c = stats.c;
    const std::size_t M = c.aps(), N = c.clusters(), K = c.users();
    require(state.upsilon.rows() == M && state.upsilon.cols() == N, ErrorCode::contract_violation,
            "upsilon has not been computed for this layout");
    require(power.clusters() == N && power.users() == K, ErrorCode::contract_violation,
            "power allocation does not match the statistics layout");

    Table gamma(N, K);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t k = 0; k < K; ++k)
        {
            double s = 0.0, leak = 0.0;
            for (std::size_t m = 0; m < M; ++m)
            {
                const double d = 1.0 + state.e(m, n);
                s += c(m, n, k) * state.e(m, n) / (d * std::sqrt(state.psi_o(m, n)));
                const double a = stats.a(m, n, k);
                leak += state.upsilon(m, n) * (c(m, n, k) * c(m, n, k) / (d * d) + a * a);
            }
            const double s2 = s * s;
            gamma(n, k) = power.p(n, k) * s2 / (s2 * intra_cluster_weight(power, rho, n, k) + leak + 1.0);
        }
    return gamma;
}

} // namespace cfnoma
