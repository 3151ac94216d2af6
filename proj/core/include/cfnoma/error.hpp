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

#include <stdexcept>
#include <string>
#include <string_view>

namespace cfnoma
{

enum class ErrorCode
{
    invalid_config,
    domain_error,
    precoder_infeasible,
    prelog_infeasible,
    convergence_failure,
    ill_conditioned,
    undefined_sinr,
    contract_violation,
    io_error
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Thrown by the fixed-point solver; carries the last residual.
class ConvergenceError : public Error
{
public:
    ConvergenceError(const std::string &what, double residual, int iterations)
        : Error(ErrorCode::convergence_failure, what), residual_(residual), iterations_(iterations)
    {
    }

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what)
{
    throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string &what)
{
    if (!condition)
        fail(code, what);
}

} // namespace cfnoma
