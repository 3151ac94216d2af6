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

using Mat = Eigen::MatrixXd;

double trace_over_l(const Mat &a, const Mat &b) { return (a * b).trace() / static_cast<double>(a.rows()); }

// e'_j = tr[Theta_j T'] / L with T' = T (1/L sum_j Theta_j e'_j / (1+e_j)^2 + seed) T, by Picard iteration.
std::vector<double> derivative_fixed_point(const std::vector<Mat> &theta, const std::vector<double> &e, const Mat &T,
                                           const Mat &seed, FixedPointOptions options)
{
    const std::size_t N = theta.size();
    const double L = static_cast<double>(T.rows());
    std::vector<double> ep(N, 0.0), next(N);
    for (int it = 0; it < options.max_iter * 10; ++it)
    {
        Mat inner = seed;
        for (std::size_t j = 0; j < N; ++j)
            inner += theta[j] * (ep[j] / (L * (1.0 + e[j]) * (1.0 + e[j])));
        const Mat tp = T * inner * T;
        double res = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < N; ++j)
        {
            next[j] = trace_over_l(theta[j], tp);
            res = std::max(res, std::abs(next[j] - ep[j]));
            scale = std::max(scale, std::abs(next[j]));
        }
        ep.swap(next);
        if (res <= 1e-15 * std::max(scale, 1.0))
            return ep;
    }
    throw ConvergenceError("oracle derivative iteration did not converge", 0.0, options.max_iter * 10);
}

} // namespace

DetEquivState det_equiv_matrix_oracle(const Table &theta_bar, double alpha, std::size_t antennas,
                                      std::span<const double> p_cluster, FixedPointOptions options)
{
    require(alpha > 0.0, ErrorCode::invalid_config, "alpha must be > 0");
    const std::size_t M = theta_bar.rows(), N = theta_bar.cols();
    require(p_cluster.size() == N, ErrorCode::contract_violation, "one power per cluster expected");
    const auto Li = static_cast<Eigen::Index>(antennas);
    const double L = static_cast<double>(antennas);
    const Mat I = Mat::Identity(Li, Li);

    DetEquivState s;
    s.e = Table(M, N);
    s.t.assign(M, 0.0);
    s.e_prime = Table(M, N);
    s.e_prime_dir = Tensor3(M, N, N);
    s.psi_o = Table(M, N);
    s.upsilon = Table(M, N);

    for (std::size_t m = 0; m < M; ++m)
    {
        std::vector<Mat> theta(N);
        for (std::size_t n = 0; n < N; ++n)
            theta[n] = I * theta_bar(m, n);

        std::vector<double> e(N, 1.0 / alpha);
        Mat T;
        int it = 0;
        for (;; ++it)
        {
            Mat inner = alpha * I;
            for (std::size_t j = 0; j < N; ++j)
                inner += theta[j] / (L * (1.0 + e[j]));
            T = inner.inverse();
            double res = 0.0;
            for (std::size_t n = 0; n < N; ++n)
            {
                const double en = trace_over_l(theta[n], T);
                res = std::max(res, std::abs(en - e[n]));
                e[n] = en;
            }
            if (res <= options.tol)
                break;
            if (it >= options.max_iter)
                throw ConvergenceError("oracle fixed point did not converge", res, it);
        }
        Mat inner = alpha * I;
        for (std::size_t j = 0; j < N; ++j)
            inner += theta[j] / (L * (1.0 + e[j]));
        T = inner.inverse();
        s.t[m] = T(0, 0);
        s.iterations = std::max(s.iterations, it + 1);

        const auto ep = derivative_fixed_point(theta, e, T, I, options);
        for (std::size_t n = 0; n < N; ++n)
        {
            s.e(m, n) = e[n];
            s.e_prime(m, n) = ep[n];
            const double d = 1.0 + e[n];
            s.psi_o(m, n) = ep[n] / (L * d * d);
        }
        for (std::size_t n = 0; n < N; ++n)
        {
            const auto dir = derivative_fixed_point(theta, e, T, theta[n], options);
            for (std::size_t q = 0; q < N; ++q)
                s.e_prime_dir(m, n, q) = dir[q];
        }
        for (std::size_t n = 0; n < N; ++n)
        {
            double u = 0.0;
            for (std::size_t q = 0; q < N; ++q)
                if (q != n)
                {
                    const double d = 1.0 + e[q];
                    u += p_cluster[q] * s.e_prime_dir(m, n, q) / (s.psi_o(m, q) * d * d);
                }
            s.upsilon(m, n) = u / L;
        }
    }
    return s;
}

} // namespace cfnoma
