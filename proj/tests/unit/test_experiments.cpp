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

#include "cfnoma/error.hpp"
#include "cfnoma/experiments.hpp"

#include <map>
#include <sstream>

using namespace cfnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

ExperimentSpec sweep_spec(std::vector<std::size_t> clusters, std::size_t drops = 2)
{
    ExperimentSpec s;
    s.axis = std::move(clusters);
    s.drops = drops;
    s.precoders = {Precoder::mrt};
    s.sics = {SicMode::imperfect};
    return s;
}

std::map<std::string, std::vector<CsvRow>> by_scheme_users(const std::vector<CsvRow> &rows)
{
    std::map<std::string, std::vector<CsvRow>> out;
    for (const auto &r : rows)
        out[r.scheme + ":" + std::to_string(r.users)].push_back(r);
    return out;
}

} // namespace

TEST_CASE("pilot feasibility follows the coherence interval", "[experiments]")
{
    const auto rows = by_scheme_users(sweep_users(sweep_spec({27, 28, 29, 56, 57})));
    CHECK(rows.at("oma:54").back().metric == "sum_rate");
    CHECK(rows.at("oma:56").back().metric == "sum_rate");
    CHECK(*rows.at("oma:56").back().value == 0.0);
    CHECK(rows.at("oma:58").size() == 1);
    CHECK(rows.at("oma:58").front().metric == "infeasible");
    CHECK_FALSE(rows.at("oma:58").front().value.has_value());
    CHECK(rows.at("noma:58").back().metric == "sum_rate");
    CHECK(*rows.at("noma:58").back().value > 0.0);
    CHECK(rows.at("noma:112").back().metric == "sum_rate");
    CHECK(rows.at("noma:114").front().metric == "infeasible");
}

TEST_CASE("fpZF is infeasible without spare antennas", "[experiments]")
{
    auto spec = sweep_spec({8});
    spec.precoders = {Precoder::fpzf};
    const auto rows = sweep_users(spec);
    for (const auto &r : rows)
        CHECK(r.metric == "infeasible");
}

TEST_CASE("experiments are deterministic", "[experiments]")
{
    auto spec = sweep_spec({10, 20});
    spec.precoders = {Precoder::mrt, Precoder::mrzf};
    std::ostringstream a, b;
    write_csv(a, sweep_users(spec));
    write_csv(b, sweep_users(spec));
    CHECK(a.str() == b.str());

    spec.seed = 2;
    std::ostringstream c;
    write_csv(c, sweep_users(spec));
    CHECK(a.str() != c.str());
}

TEST_CASE("mean rows summarise the drop rows", "[experiments]")
{
    auto spec = sweep_spec({12}, 4);
    spec.source = SourceSelection::both;
    spec.trials = 50;
    const auto rows = sweep_users(spec);
    double sum = 0.0;
    std::size_t count = 0;
    std::size_t means = 0;
    for (const auto &r : rows)
    {
        if (r.drop == "mean")
        {
            CHECK_THAT(*r.value, WithinRel(sum / static_cast<double>(count), 1e-12));
            CHECK(count == 4);
            sum = 0.0;
            count = 0;
            ++means;
            continue;
        }
        sum += *r.value;
        ++count;
    }
    CHECK(means == 4);
    CHECK(rows.front().experiment == "sweep-users");
    CHECK(rows.back().experiment == "sweep-users:mc");
}

TEST_CASE("drops are shared across variants", "[experiments]")
{
    auto spec = sweep_spec({10}, 3);
    spec.schemes = {Scheme::noma};
    spec.sics = {SicMode::perfect, SicMode::imperfect};
    const auto rows = sweep_users(spec);
    REQUIRE(rows.size() == 8);
    for (std::size_t d = 0; d < 3; ++d)
    {
        CHECK(rows[d].seed == rows[4 + d].seed);
        CHECK(*rows[d].value >= *rows[4 + d].value);
    }
}

TEST_CASE("cdf emits one row per cluster", "[experiments]")
{
    ExperimentSpec spec;
    spec.kind = ExperimentKind::cdf_cluster;
    spec.base.antennas_per_ap = 24;
    spec.base.num_clusters = 12;
    spec.drops = 3;
    spec.precoders = {Precoder::mrt, Precoder::fpzf, Precoder::mrzf};
    spec.schemes = {Scheme::noma};
    const auto rows = cdf_cluster(spec);
    CHECK(rows.size() == 3 * 2 * 3 * 12);
    for (const auto &r : rows)
    {
        CHECK(r.metric == "per_cluster_rate");
        CHECK(r.experiment == "cdf");
        CHECK(*r.value > 0.0);
    }
}

TEST_CASE("de-error requires L divisible by K", "[experiments]")
{
    ExperimentSpec spec;
    spec.kind = ExperimentKind::de_error;
    spec.axis = {9};
    spec.drops = 1;
    spec.trials = 20;
    CHECK_THROWS_AS(de_error(spec), Error);

    spec.axis = {8};
    spec.sics = {SicMode::imperfect};
    std::vector<DeErrorPoint> summary;
    const auto rows = de_error(spec, &summary);
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].clusters == 4);
    REQUIRE(rows.size() == 6);
    const double de = *rows[0].value, mc = *rows[1].value;
    CHECK(rows[1].experiment == "de-error:mc");
    CHECK_THAT(*rows[2].value, WithinRel((mc - de) / mc, 1e-12));
    CHECK_THAT(summary[0].mean_abs_rel_error, WithinRel(std::abs((mc - de) / mc), 1e-12));
}

TEST_CASE("empirical quantile interpolates linearly", "[experiments]")
{
    CHECK_THAT(empirical_quantile({3.0, 1.0, 2.0, 4.0}, 0.5), WithinAbs(2.5, 1e-15));
    CHECK_THAT(empirical_quantile({0.0, 10.0}, 0.1), WithinAbs(1.0, 1e-15));
    CHECK(empirical_quantile({5.0}, 0.9) == 5.0);
    CHECK_THROWS_AS(empirical_quantile({}, 0.1), Error);
    CHECK_THROWS_AS(empirical_quantile({1.0}, 1.5), Error);
}

TEST_CASE("meta sidecar records seed and configuration", "[experiments]")
{
    auto spec = sweep_spec({10, 20});
    spec.seed = 42;
    const auto text = meta_text(spec);
    CHECK(text.find("kind = sweep-users") != std::string::npos);
    CHECK(text.find("seed = 42") != std::string::npos);
    CHECK(text.find("axis = 10,20") != std::string::npos);
    CHECK(text.find("# config") != std::string::npos);
    CHECK(text.find(to_text(spec.base)) != std::string::npos);
}
