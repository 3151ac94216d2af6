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

#include "cfnoma/config.hpp"
#include "cfnoma/csv.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cfnoma
{

struct PropertyResult
{
    std::string name;
    double measured = 0.0; // deviation from the reference, relative unless the name says otherwise
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions
{
    SystemConfig base;
    std::uint64_t seed = 1;
    std::size_t trials = 2000;
    std::size_t moment_draws = 100000;
    unsigned workers = 1;
    // Negative control: inflates theta past beta before the estimation invariants are checked.
    bool corrupt_theta = false;
};

PropertyResult check_estimation_invariants(const ValidationOptions &opt);
PropertyResult check_wishart_fourth_moment(const ValidationOptions &opt);
PropertyResult check_inverse_wishart_diagonal(const ValidationOptions &opt);
PropertyResult check_estimate_parallelism(const ValidationOptions &opt);
PropertyResult check_large_antenna_limit(const ValidationOptions &opt);
PropertyResult check_golden_ratio(const ValidationOptions &opt);
PropertyResult check_det_equiv_oracle(const ValidationOptions &opt);

/// MRT closed-form SINR (L = 8) against the Monte Carlo estimator on one drop; also
/// reports the sample mean of the effective gain against sqrt(L) sum sqrt(theta).
std::vector<PropertyResult> check_mrt_against_mc(const ValidationOptions &opt);

/// fpZF closed-form SINR (L = 16) against Monte Carlo, plus the nulling residual.
std::vector<PropertyResult> check_fpzf_against_mc(const ValidationOptions &opt);

std::vector<PropertyResult> run_validation(const ValidationOptions &opt);

std::vector<CsvRow> validation_rows(const std::vector<PropertyResult> &results, const ValidationOptions &opt);

} // namespace cfnoma
