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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfnoma
{

inline constexpr std::string_view csv_header =
    "experiment,precoder,scheme,sic,M,L,N,K,users,alpha,drop,seed,metric,value";

/// One long-format result row. An empty drop or value is written as an empty field.
struct CsvRow
{
    std::string experiment;
    std::string precoder;
    std::string scheme;
    std::string sic;
    std::size_t M = 0;
    std::size_t L = 0;
    std::size_t N = 0;
    std::size_t K = 0;
    std::size_t users = 0;
    double alpha = 0.0;
    std::string drop;
    std::uint64_t seed = 0;
    std::string metric;
    std::optional<double> value;

    bool operator==(const CsvRow &) const = default;
};

/// 12 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);
double parse_double(std::string_view text);

std::string format_row(const CsvRow &row);
void write_csv(std::ostream &out, const std::vector<CsvRow> &rows);

CsvRow parse_row(std::string_view line);
std::vector<CsvRow> read_csv(std::istream &in);

} // namespace cfnoma
