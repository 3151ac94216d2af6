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
#include "cfnoma/noma_control.hpp"
#include "cfnoma/tensor.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace cfnoma
{

struct FixedPointOptions
{
    double tol = 1e-12;
    int max_iter = 10000;
};

struct DetEquivState
{
    Table e;             // M x N
    std::vector<double> t; // M, T_m = t_m I
    Table e_prime;       // M x N
    Tensor3 e_prime_dir; // (m, n, n') holds e'_{n', mn}
    Table psi_o;         // M x N
    Table upsilon;       // M x N
    int iterations = 0;
    double residual = 0.0;
};

struct FixedPoint
{
    Table e;
    std::vector<double> t;
    int iterations = 0;
    double residual = 0.0;
};

/// Picard iteration of e_mn <- theta_bar_mn t_m from e = 1/alpha.
FixedPoint solve_fixed_point(const Table &theta_bar, double alpha, std::size_t antennas,
                             FixedPointOptions options = {});

Eigen::MatrixXd j_matrix(std::span<const double> theta_bar, std::span<const double> e, double t,
                         std::size_t antennas);

/// Fills e_prime and e_prime_dir of a state whose e and t are set.
void derivative_terms(DetEquivState &state, const Table &theta_bar, std::size_t antennas);

/// Fills psi_o and upsilon. p_cluster holds the per-cluster powers p_n.
void psi_and_upsilon(DetEquivState &state, std::span<const double> p_cluster, std::size_t antennas);

/// Psi only; it does not depend on the powers, so ordering can use it before allocation.
DetEquivState solve_det_equiv(const Table &theta_bar, double alpha, std::size_t antennas,
                              FixedPointOptions options = {});

Table sinr_mrzf_noma(const DetEquivState &state, const EstimationStats &stats, const PowerAllocation &power,
                     const Table &rho);

/// Reference path with explicit L x L matrices for every trace. Slow; used by tests.
DetEquivState det_equiv_matrix_oracle(const Table &theta_bar, double alpha, std::size_t antennas,
                                      std::span<const double> p_cluster, FixedPointOptions options = {});

} // namespace cfnoma
