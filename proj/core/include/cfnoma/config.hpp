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

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cfnoma
{

enum class Scheme
{
    noma,
    oma
};

enum class SicMode
{
    perfect,
    imperfect
};

std::string_view to_string(Scheme scheme) noexcept;
std::string_view to_string(SicMode sic) noexcept;
Scheme parse_scheme(std::string_view text);
SicMode parse_sic(std::string_view text);

inline constexpr double boltzmann = 1.380649e-23;

/// Scenario parameters. Defaults are the reference simulation setup
/// (M = 25 APs, 20 dBm pilots, 23 dBm per-AP power, tau_c = 56, 3:7 split).
///
/// Powers are linear watts. Large-scale coefficients produced from this
/// config are divided by the thermal noise power, so p * beta is an SNR.
struct SystemConfig
{
    std::size_t num_aps = 25;
    std::size_t antennas_per_ap = 8;
    std::size_t num_clusters = 10;
    std::size_t users_per_cluster = 2;
    std::size_t coherence_interval = 56;

    double pilot_power = 0.1;               // 20 dBm
    double total_ap_power = 0.199526231497; // 23 dBm
    double sic_correlation = 0.1;
    double rzf_alpha = 0.8;
    std::vector<double> power_split = {0.3, 0.7};

    double area_side = 1000.0;
    double breakpoint_d0 = 10.0;
    double breakpoint_d1 = 50.0;
    double carrier_mhz = 1900.0;
    double height_ap = 65.0;
    double height_user = 15.0;
    double shadow_std_db = 8.0;
    double cluster_radius = 50.0;
    double bandwidth_hz = 20e6;
    double noise_figure_db = 9.0;

    // Length unit of the distances inside the log10 terms of the path-loss
    // model, in metres. Hata-COST231 is defined with km.
    double pathloss_distance_unit = 1000.0;
    double min_distance = 1.0;

    Scheme scheme = Scheme::noma;

    bool operator==(const SystemConfig &) const = default;
};

/// Throws Error(invalid_config) describing the first violated constraint.
void validate(const SystemConfig &cfg);

/// Pilot length: N for NOMA, K*N for OMA.
std::size_t pilot_length(const SystemConfig &cfg) noexcept;

/// Pre-log factor (tau_c - tau) / tau_c. May be <= 0 for infeasible frames.
double prelog_factor(std::size_t coherence_interval, std::size_t pilot_len) noexcept;

/// Thermal noise power 290 * k_B * B * 10^(NF/10) in watts.
double noise_variance(double bandwidth_hz, double noise_figure_db);

/// Hata-COST231 constant of the path-loss model in dB.
double hata_constant(const SystemConfig &cfg) noexcept;

/// Three-slope path loss in dB (negative). d in metres.
double path_loss_db(double d, const SystemConfig &cfg);

double dbm_to_watt(double dbm) noexcept;

// Plain-text `key = value` config I/O. Keys are the SystemConfig field names;
// `pilot_power_dbm` and `total_ap_power_dbm` are accepted as aliases.
SystemConfig parse_config(std::string_view text, SystemConfig base = {});
SystemConfig load_config(const std::string &path, SystemConfig base = {});
void apply_setting(SystemConfig &cfg, std::string_view key, std::string_view value);
std::string to_text(const SystemConfig &cfg);
std::vector<std::string> config_keys();

/// FNV-1a over to_text(cfg); stable across runs and platforms.
std::uint64_t config_hash(const SystemConfig &cfg);

} // namespace cfnoma
