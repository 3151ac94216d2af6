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
#include "cfnoma/tensor.hpp"

#include <span>
#include <vector>

namespace cfnoma
{

struct DetEquivState;

/// ordering[n] lists user indices of cluster n from strongest to weakest.
using Ordering = std::vector<std::vector<std::size_t>>;

struct PowerAllocation
{
    Table lambda;                   // N x K fractions of the AP power, summing to 1
    Table p;                        // N x K linear powers
    std::vector<double> p_cluster;  // N
    Ordering ordering;

    std::size_t clusters() const noexcept { return p.rows(); }
    std::size_t users() const noexcept { return p.cols(); }
};

/// Mean-effective-gain metric for MRT and fpZF: sum_m sqrt(theta_mnk).
Table ordering_metric_linear(const EstimationStats &stats);

/// Metric for mRZF: sum_m c_mnk e_mn / ((1 + e_mn) sqrt(psi_mn)).
Table ordering_metric_mrzf(const EstimationStats &stats, const DetEquivState &state);

/// Sorts users of each cluster by descending metric; ties keep the lower index first.
Ordering order_users(const Table &metric);

/// p_n = total / N; within a cluster the k-th strongest user gets split[k].
/// split must be ascending and sum to 1.
PowerAllocation allocate_power(double total_power, std::span<const double> split, const Ordering &ordering);

/// Intra-cluster interference weight seen by user k of cluster n after SIC:
/// sum over stronger users of p_ni plus sum over weaker users of p_ni (2 - 2 rho_ni).
/// rho is N x K, indexed by the interfering user.
double intra_cluster_weight(const PowerAllocation &power, const Table &rho, std::size_t n, std::size_t k);

/// N x K table filled with rho (1.0 models perfect SIC).
Table uniform_sic(std::size_t clusters, std::size_t users, double rho);

} // namespace cfnoma
