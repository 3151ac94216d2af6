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

#include "cfnoma/csv.hpp"
#include "cfnoma/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace cfnoma;

namespace
{

CsvRow sample_row()
{
    CsvRow r;
    r.experiment = "sweep-users";
    r.precoder = "mrt";
    r.scheme = "noma";
    r.sic = "imperfect";
    r.M = 25;
    r.L = 8;
    r.N = 20;
    r.K = 2;
    r.users = 40;
    r.alpha = 0.8;
    r.drop = "3";
    r.seed = 0xdeadbeefcafef00dULL;
    r.metric = "sum_rate";
    r.value = 12.345678901234;
    return r;
}

} // namespace

TEST_CASE("header lists the fourteen columns", "[csv]")
{
    std::ostringstream out;
    write_csv(out, {});
    CHECK(out.str() == "experiment,precoder,scheme,sic,M,L,N,K,users,alpha,drop,seed,metric,value\n");
}

TEST_CASE("rows round-trip through text", "[csv]")
{
    std::vector<CsvRow> rows{sample_row()};
    rows.push_back(sample_row());
    rows.back().drop = "mean";
    rows.back().value = 1e-300;
    rows.push_back(sample_row());
    rows.back().metric = "infeasible";
    rows.back().drop.clear();
    rows.back().value.reset();

    std::stringstream io;
    write_csv(io, rows);
    const auto back = read_csv(io);
    REQUIRE(back.size() == rows.size());
    CHECK(back[0].seed == rows[0].seed);
    CHECK(back[0].drop == "3");
    CHECK(back[1].drop == "mean");
    CHECK(back[2].drop.empty());
    CHECK_FALSE(back[2].value.has_value());
    REQUIRE(back[0].value.has_value());
    CHECK(std::abs(*back[0].value - 12.345678901234) / 12.345678901234 < 1e-9);
}

TEST_CASE("infeasible rows leave drop and value empty", "[csv]")
{
    auto r = sample_row();
    r.metric = "infeasible";
    r.drop.clear();
    r.value.reset();
    CHECK(format_row(r) == "sweep-users,mrt,noma,imperfect,25,8,20,2,40,0.8,,16045690984503111693,infeasible,");
}

TEST_CASE("doubles keep at least nine significant digits", "[csv]")
{
    for (double v : {1.0 / 3.0, 2.718281828459045, 123456.789012345, 6.02214076e23, 1.602176634e-19})
        CHECK(std::abs(parse_double(format_double(v)) - v) <= 1e-9 * std::abs(v));
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(std::isinf(parse_double("inf")));
    CHECK(std::isnan(parse_double(format_double(std::nan("")))));
}

TEST_CASE("malformed input is rejected", "[csv]")
{
    std::istringstream bad_header("experiment,precoder\n");
    CHECK_THROWS_AS(read_csv(bad_header), Error);
    CHECK_THROWS_AS(parse_row("a,b,c"), Error);
    auto r = sample_row();
    r.metric = "a,b";
    CHECK_THROWS_AS(format_row(r), Error);
}
