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

#include "cfnoma/config.hpp"
#include "cfnoma/error.hpp"

#include <cmath>

using namespace cfnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

ErrorCode code_of(auto &&fn)
{
    try
    {
        fn();
    }
    catch (const Error &e)
    {
        return e.code();
    }
    FAIL("expected a cfnoma::Error");
    return ErrorCode::contract_violation;
}

SystemConfig metre_config()
{
    SystemConfig cfg;
    cfg.pathloss_distance_unit = 1.0;
    return cfg;
}

} // namespace

TEST_CASE("noise variance follows kTBF", "[config]")
{
    const double n9 = noise_variance(20e6, 9.0);
    CHECK_THAT(n9, WithinRel(6.361e-13, 1e-3));
    CHECK_THAT(10.0 * std::log10(n9 / 1e-3), WithinAbs(-91.97, 0.01));
    CHECK_THAT(noise_variance(20e6, 0.0), WithinRel(8.008e-14, 1e-3));
    CHECK(noise_variance(40e6, 9.0) == 2.0 * n9);
    CHECK(code_of([] { noise_variance(0.0, 9.0); }) == ErrorCode::invalid_config);
    CHECK(code_of([] { noise_variance(-1.0, 9.0); }) == ErrorCode::invalid_config);
}

TEST_CASE("path loss in metres reproduces the three-slope values", "[config]")
{
    const auto cfg = metre_config();
    CHECK_THAT(hata_constant(cfg), WithinAbs(93.110706, 1e-6));
    CHECK_THAT(path_loss_db(100.0, cfg), WithinAbs(-163.110706, 1e-6));
    CHECK_THAT(path_loss_db(50.0, cfg), WithinAbs(-152.574656, 1e-6));
    // two-decimal reference values, truncated
    CHECK_THAT(hata_constant(cfg), WithinAbs(93.10, 0.02));
    CHECK_THAT(path_loss_db(100.0, cfg), WithinAbs(-163.10, 0.02));
    CHECK_THAT(path_loss_db(50.0, cfg), WithinAbs(-152.56, 0.02));
    CHECK(path_loss_db(5.0, cfg) == path_loss_db(10.0, cfg));
    CHECK(code_of([&] { path_loss_db(0.0, cfg); }) == ErrorCode::domain_error);
    CHECK(code_of([&] { path_loss_db(-3.0, cfg); }) == ErrorCode::domain_error);
}

TEST_CASE("path loss uses km inside the logarithms by default", "[config]")
{
    const SystemConfig cfg;
    const double hata = hata_constant(cfg);
    CHECK_THAT(path_loss_db(100.0, cfg), WithinAbs(-hata + 35.0, 1e-9));
    CHECK_THAT(path_loss_db(1000.0, cfg), WithinAbs(-hata, 1e-9));
}

TEST_CASE("path loss branches meet at the breakpoints", "[config]")
{
    for (const double unit : {1.0, 1000.0})
    {
        SystemConfig cfg;
        cfg.pathloss_distance_unit = unit;
        const double h = hata_constant(cfg);
        const double d1 = cfg.breakpoint_d1 / unit, d0 = cfg.breakpoint_d0 / unit;
        const double far = -h - 35.0 * std::log10(d1);
        const double mid_at_d1 = -h - 15.0 * std::log10(d1) - 20.0 * std::log10(d1);
        const double mid_at_d0 = -h - 15.0 * std::log10(d1) - 20.0 * std::log10(d0);
        CHECK_THAT(far, WithinAbs(mid_at_d1, 1e-9));
        CHECK_THAT(path_loss_db(cfg.breakpoint_d1, cfg), WithinAbs(far, 1e-9));
        CHECK_THAT(path_loss_db(cfg.breakpoint_d1 * (1 + 1e-12), cfg), WithinAbs(far, 1e-9));
        CHECK_THAT(path_loss_db(cfg.breakpoint_d0, cfg), WithinAbs(mid_at_d0, 1e-9));
        CHECK_THAT(path_loss_db(cfg.breakpoint_d0 * (1 + 1e-12), cfg), WithinAbs(mid_at_d0, 1e-9));
    }
}

TEST_CASE("pilot length and prelog factor", "[config]")
{
    SystemConfig cfg;
    cfg.num_clusters = 20;
    CHECK(pilot_length(cfg) == 20);
    CHECK(prelog_factor(56, 20) == 36.0 / 56.0);
    cfg.scheme = Scheme::oma;
    CHECK(pilot_length(cfg) == 40);
    cfg.num_clusters = 28;
    CHECK(prelog_factor(56, pilot_length(cfg)) == 0.0);
}

TEST_CASE("default configuration is valid and matches the reference table", "[config]")
{
    const SystemConfig cfg;
    REQUIRE_NOTHROW(validate(cfg));
    CHECK(cfg.num_aps == 25);
    CHECK(cfg.coherence_interval == 56);
    CHECK_THAT(cfg.pilot_power, WithinRel(dbm_to_watt(20.0), 1e-12));
    CHECK_THAT(cfg.total_ap_power, WithinRel(dbm_to_watt(23.0), 1e-11));
    CHECK(cfg.power_split == std::vector<double>{0.3, 0.7});
}

TEST_CASE("validation rejects inconsistent configurations", "[config]")
{
    const auto rejects = [](auto mutate) {
        SystemConfig cfg;
        mutate(cfg);
        return code_of([&] { validate(cfg); }) == ErrorCode::invalid_config;
    };
    CHECK(rejects([](SystemConfig &c) { c.users_per_cluster = 1; c.power_split = {1.0}; }));
    CHECK(rejects([](SystemConfig &c) { c.num_clusters = 57; }));
    CHECK(rejects([](SystemConfig &c) { c.scheme = Scheme::oma; c.num_clusters = 29; }));
    CHECK(rejects([](SystemConfig &c) { c.power_split = {0.7, 0.3}; }));
    CHECK(rejects([](SystemConfig &c) { c.power_split = {0.3, 0.6}; }));
    CHECK(rejects([](SystemConfig &c) { c.power_split = {-0.1, 1.1}; }));
    CHECK(rejects([](SystemConfig &c) { c.sic_correlation = 1.5; }));
    CHECK(rejects([](SystemConfig &c) { c.rzf_alpha = 0.0; }));
    CHECK(rejects([](SystemConfig &c) { c.breakpoint_d0 = 60.0; }));
    CHECK(rejects([](SystemConfig &c) { c.breakpoint_d1 = 2000.0; }));
    CHECK(rejects([](SystemConfig &c) { c.bandwidth_hz = 0.0; }));
    CHECK(rejects([](SystemConfig &c) { c.num_aps = 0; }));

    SystemConfig oma;
    oma.scheme = Scheme::oma;
    oma.num_clusters = 28;
    CHECK_NOTHROW(validate(oma));
}

TEST_CASE("config text round-trips and hashes stably", "[config]")
{
    SystemConfig cfg;
    cfg.num_clusters = 17;
    cfg.rzf_alpha = 0.125;
    cfg.power_split = {0.2, 0.3, 0.5};
    cfg.users_per_cluster = 3;
    cfg.scheme = Scheme::oma;
    const auto back = parse_config(to_text(cfg));
    CHECK(back == cfg);
    CHECK(config_hash(back) == config_hash(cfg));

    SystemConfig other = cfg;
    other.rzf_alpha = 0.25;
    CHECK(config_hash(other) != config_hash(cfg));
    CHECK(config_keys().size() == 23);
}

TEST_CASE("config parser handles comments, aliases and errors", "[config]")
{
    const auto cfg = parse_config("# scenario\n num_aps = 40  # more APs\n\npilot_power_dbm = 10\n"
                                  "power_split = 0.25, 0.75\nscheme = oma\n");
    CHECK(cfg.num_aps == 40);
    CHECK_THAT(cfg.pilot_power, WithinRel(0.01, 1e-12));
    CHECK(cfg.power_split == std::vector<double>{0.25, 0.75});
    CHECK(cfg.scheme == Scheme::oma);

    CHECK(code_of([] { parse_config("no_such_key = 1"); }) == ErrorCode::invalid_config);
    CHECK(code_of([] { parse_config("num_aps = many"); }) == ErrorCode::invalid_config);
    CHECK(code_of([] { parse_config("num_aps 25"); }) == ErrorCode::invalid_config);
    CHECK(code_of([] { parse_config("num_aps = -2"); }) == ErrorCode::invalid_config);
    CHECK(code_of([] { load_config("/nonexistent/cfnoma.cfg"); }) == ErrorCode::io_error);
}

TEST_CASE("enum spellings parse", "[config]")
{
    CHECK(parse_scheme("noma") == Scheme::noma);
    CHECK(parse_scheme("OMA") == Scheme::oma);
    CHECK(parse_sic("perfect") == SicMode::perfect);
    CHECK(code_of([] { parse_sic("partial"); }) == ErrorCode::invalid_config);
    CHECK(to_string(ErrorCode::prelog_infeasible) == "prelog-infeasible");
}
