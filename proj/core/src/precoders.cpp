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

#include "cfnoma/precoders.hpp"
#include "cfnoma/error.hpp"
#include "cfnoma/seeding.hpp"

#include <cmath>

namespace cfnoma
{

std::string_view to_string(Precoder p) noexcept
{
    switch (p)
    {
    case Precoder::mrt: return "mrt";
    case Precoder::fpzf: return "fpzf";
    case Precoder::mrzf: return "mrzf";
    }
    return "unknown";
}

Precoder parse_precoder(std::string_view text)
{
    if (text == "mrt") return Precoder::mrt;
    if (text == "fpzf") return Precoder::fpzf;
    if (text == "mrzf") return Precoder::mrzf;
    fail(ErrorCode::invalid_config, "unknown precoder '" + std::string(text) + "'");
}

Eigen::MatrixXcd mrt_precoder(const Eigen::MatrixXcd &hbar, std::span<const double> theta_bar)
{
    require(theta_bar.size() == static_cast<std::size_t>(hbar.cols()), ErrorCode::contract_violation,
            "theta_bar length must equal the number of pilots");
    const double L = static_cast<double>(hbar.rows());
    Eigen::MatrixXcd w = hbar;
    for (Eigen::Index n = 0; n < w.cols(); ++n)
        w.col(n) /= std::sqrt(L * theta_bar[static_cast<std::size_t>(n)]);
    return w;
}

Eigen::MatrixXcd fpzf_precoder(const Eigen::MatrixXcd &hbar, std::span<const double> theta_bar)
{
    const Eigen::Index L = hbar.rows(), N = hbar.cols();
    require(theta_bar.size() == static_cast<std::size_t>(N), ErrorCode::contract_violation,
            "theta_bar length must equal the number of pilots");
    if (L <= N)
        fail(ErrorCode::precoder_infeasible, "fpZF needs L >= N + 1 antennas (L = " + std::to_string(L) +
                                                 ", N = " + std::to_string(N) + ")");

    // Work with unit-variance columns: Hbar = Z D^{1/2} gives
    // Hbar (Hbar^H Hbar)^-1 e_n sqrt(theta_bar_n) = Z (Z^H Z)^-1 e_n.
    Eigen::MatrixXcd z = hbar;
    for (Eigen::Index n = 0; n < N; ++n)
        z.col(n) /= std::sqrt(theta_bar[static_cast<std::size_t>(n)]);

    // Z = Q R, so Z (Z^H Z)^-1 = Q R^-H.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    const Eigen::MatrixXcd r = qr.matrixQR().topRows(N).triangularView<Eigen::Upper>();
    const double rmin = r.diagonal().cwiseAbs().minCoeff(), rmax = r.diagonal().cwiseAbs().maxCoeff();
    if (!(rmin > 1e-13 * rmax))
        fail(ErrorCode::ill_conditioned, "pilot observations are numerically collinear");
    Eigen::MatrixXcd inv_rh = Eigen::MatrixXcd::Identity(N, N) * std::sqrt(static_cast<double>(L - N));
    r.adjoint().triangularView<Eigen::Lower>().solveInPlace(inv_rh);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(L, N);
    return q * inv_rh;
}

Eigen::MatrixXcd mrzf_precoder(const Eigen::MatrixXcd &hbar, double alpha, std::span<const double> psi)
{
    const Eigen::Index L = hbar.rows();
    require(alpha > 0.0, ErrorCode::invalid_config, "mRZF needs alpha > 0");
    require(psi.size() == static_cast<std::size_t>(hbar.cols()), ErrorCode::contract_violation,
            "psi length must equal the number of pilots");

    Eigen::MatrixXcd sigma = hbar * hbar.adjoint();
    sigma.diagonal().array() += static_cast<double>(L) * alpha;
    Eigen::LLT<Eigen::MatrixXcd> llt(sigma);
    Eigen::MatrixXcd w = llt.solve(hbar);
    for (Eigen::Index n = 0; n < w.cols(); ++n)
    {
        const double p = psi[static_cast<std::size_t>(n)];
        require(p > 0.0, ErrorCode::contract_violation, "mRZF normalization must be positive");
        w.col(n) /= std::sqrt(p);
    }
    return w;
}

PrecoderSet build_precoders(Precoder scheme, const std::vector<Eigen::MatrixXcd> &hbar, const Table &theta_bar,
                            double alpha, const Table *psi, Normalization normalization)
{
    require(theta_bar.rows() == hbar.size(), ErrorCode::contract_violation, "theta_bar rows must equal M");
    PrecoderSet set;
    set.scheme = scheme;
    set.normalization = normalization;
    set.w.reserve(hbar.size());
    for (std::size_t m = 0; m < hbar.size(); ++m)
    {
        switch (scheme)
        {
        case Precoder::mrt: set.w.push_back(mrt_precoder(hbar[m], theta_bar.row(m))); break;
        case Precoder::fpzf: set.w.push_back(fpzf_precoder(hbar[m], theta_bar.row(m))); break;
        case Precoder::mrzf:
            require(psi != nullptr, ErrorCode::contract_violation, "mRZF needs a normalization table");
            set.w.push_back(mrzf_precoder(hbar[m], alpha, psi->row(m)));
            break;
        }
    }
    return set;
}

Table empirical_mrzf_norm(const Tensor3 &beta, std::size_t antennas, std::size_t pilot_len, double pilot_power,
                          double alpha, std::size_t draws, std::uint64_t seed)
{
    require(draws > 0, ErrorCode::invalid_config, "need at least one draw");
    const std::size_t M = beta.aps(), N = beta.clusters();
    Table acc(M, N);
    const std::vector<double> ones(N, 1.0);
    for (std::size_t d = 0; d < draws; ++d)
    {
        auto ch = draw_small_scale(beta, antennas, derive_seed(seed, SeedPurpose::small_scale, d));
        pilot_observation(ch, pilot_len, pilot_power, derive_seed(seed, SeedPurpose::pilot_noise, d));
        for (std::size_t m = 0; m < M; ++m)
        {
            const Eigen::MatrixXcd w = mrzf_precoder(ch.hbar[m], alpha, ones);
            for (std::size_t n = 0; n < N; ++n)
                acc(m, n) += w.col(static_cast<Eigen::Index>(n)).squaredNorm();
        }
    }
    for (auto &v : acc.flat())
        v /= static_cast<double>(draws);
    return acc;
}

} // namespace cfnoma
