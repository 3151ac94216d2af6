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

#include "cfnoma/config.hpp"
#include "cfnoma/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace cfnoma
{

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::invalid_config: return "invalid-config";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::precoder_infeasible: return "precoder-infeasible";
    case ErrorCode::prelog_infeasible: return "prelog-infeasible";
    case ErrorCode::convergence_failure: return "convergence-failure";
    case ErrorCode::ill_conditioned: return "ill-conditioned";
    case ErrorCode::undefined_sinr: return "undefined-sinr";
    case ErrorCode::contract_violation: return "contract-violation";
    case ErrorCode::io_error: return "io-error";
    }
    return "unknown";
}

std::string_view to_string(Scheme scheme) noexcept
{
    return scheme == Scheme::noma ? "noma" : "oma";
}

std::string_view to_string(SicMode sic) noexcept
{
    return sic == SicMode::perfect ? "perfect" : "imperfect";
}

Scheme parse_scheme(std::string_view text)
{
    if (text == "noma" || text == "NOMA")
        return Scheme::noma;
    if (text == "oma" || text == "OMA")
        return Scheme::oma;
    fail(ErrorCode::invalid_config, "unknown scheme '" + std::string(text) + "'");
}

SicMode parse_sic(std::string_view text)
{
    if (text == "perfect")
        return SicMode::perfect;
    if (text == "imperfect")
        return SicMode::imperfect;
    fail(ErrorCode::invalid_config, "unknown sic mode '" + std::string(text) + "'");
}

std::size_t pilot_length(const SystemConfig &cfg) noexcept
{
    return cfg.scheme == Scheme::noma ? cfg.num_clusters : cfg.num_clusters * cfg.users_per_cluster;
}

double prelog_factor(std::size_t coherence_interval, std::size_t pilot_len) noexcept
{
    const double tc = static_cast<double>(coherence_interval);
    return (tc - static_cast<double>(pilot_len)) / tc;
}

void validate(const SystemConfig &cfg)
{
    const auto bad = [](const std::string &msg) { fail(ErrorCode::invalid_config, msg); };

    if (cfg.num_aps == 0) bad("num_aps must be >= 1");
    if (cfg.antennas_per_ap == 0) bad("antennas_per_ap must be >= 1");
    if (cfg.num_clusters == 0) bad("num_clusters must be >= 1");
    if (cfg.users_per_cluster == 0) bad("users_per_cluster must be >= 1");
    if (cfg.scheme == Scheme::noma && cfg.users_per_cluster < 2)
        bad("NOMA requires users_per_cluster >= 2");
    if (cfg.coherence_interval == 0) bad("coherence_interval must be >= 1");
    if (pilot_length(cfg) > cfg.coherence_interval)
        bad("pilot length " + std::to_string(pilot_length(cfg)) + " exceeds coherence_interval " +
            std::to_string(cfg.coherence_interval));
    if (!(cfg.pilot_power >= 0.0)) bad("pilot_power must be >= 0");
    if (!(cfg.total_ap_power >= 0.0)) bad("total_ap_power must be >= 0");
    if (!(cfg.sic_correlation >= 0.0 && cfg.sic_correlation <= 1.0)) bad("sic_correlation must lie in [0, 1]");
    if (!(cfg.rzf_alpha > 0.0)) bad("rzf_alpha must be > 0");

    if (cfg.power_split.size() != cfg.users_per_cluster)
        bad("power_split needs " + std::to_string(cfg.users_per_cluster) + " entries");
    double total = 0.0;
    for (std::size_t k = 0; k < cfg.power_split.size(); ++k)
    {
        if (!(cfg.power_split[k] >= 0.0)) bad("power_split entries must be >= 0");
        if (k > 0 && cfg.power_split[k] < cfg.power_split[k - 1])
            bad("power_split must be ascending (weakest user gets the largest share)");
        total += cfg.power_split[k];
    }
    if (std::abs(total - 1.0) > 1e-12) bad("power_split must sum to 1");

    if (!(cfg.breakpoint_d0 > 0.0 && cfg.breakpoint_d0 < cfg.breakpoint_d1 && cfg.breakpoint_d1 < cfg.area_side))
        bad("need 0 < d0 < d1 < area_side");
    if (!(cfg.carrier_mhz > 0.0 && cfg.height_ap > 0.0 && cfg.height_user > 0.0))
        bad("carrier and antenna heights must be positive");
    if (!(cfg.shadow_std_db >= 0.0)) bad("shadow_std_db must be >= 0");
    if (!(cfg.cluster_radius >= 0.0)) bad("cluster_radius must be >= 0");
    if (!(cfg.bandwidth_hz > 0.0)) bad("bandwidth_hz must be > 0");
    if (!(cfg.pathloss_distance_unit > 0.0)) bad("pathloss_distance_unit must be > 0");
    if (!(cfg.min_distance > 0.0)) bad("min_distance must be > 0");
}

double noise_variance(double bandwidth_hz, double noise_figure_db)
{
    require(bandwidth_hz > 0.0, ErrorCode::invalid_config, "bandwidth must be positive");
    return 290.0 * boltzmann * bandwidth_hz * std::pow(10.0, noise_figure_db / 10.0);
}

double hata_constant(const SystemConfig &cfg) noexcept
{
    const double lf = std::log10(cfg.carrier_mhz);
    return 46.3 + 33.9 * lf - 13.82 * std::log10(cfg.height_ap) - (1.1 * lf - 0.7) * cfg.height_user +
           (1.56 * lf - 0.8);
}

double path_loss_db(double d, const SystemConfig &cfg)
{
    require(d > 0.0, ErrorCode::domain_error, "path loss needs a positive distance");
    const double unit = cfg.pathloss_distance_unit;
    const double hata = hata_constant(cfg);
    const double d1 = cfg.breakpoint_d1 / unit;
    const double d0 = cfg.breakpoint_d0 / unit;
    const double x = d / unit;

    if (d > cfg.breakpoint_d1)
        return -hata - 35.0 * std::log10(x);
    if (d > cfg.breakpoint_d0)
        return -hata - 15.0 * std::log10(d1) - 20.0 * std::log10(x);
    return -hata - 15.0 * std::log10(d1) - 20.0 * std::log10(d0);
}

double dbm_to_watt(double dbm) noexcept
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view value)
{
    double out = 0.0;
    const auto *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        fail(ErrorCode::invalid_config, "key '" + std::string(key) + "': not a number: '" + std::string(value) + "'");
    return out;
}

std::size_t to_count(std::string_view key, std::string_view value)
{
    std::size_t out = 0;
    const auto *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        fail(ErrorCode::invalid_config,
             "key '" + std::string(key) + "': not a non-negative integer: '" + std::string(value) + "'");
    return out;
}

std::string fmt_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

struct Field
{
    std::function<void(SystemConfig &, std::string_view, std::string_view)> set;
    std::function<std::string(const SystemConfig &)> get;
};

template <typename T>
Field count_field(T SystemConfig::*member)
{
    return {[member](SystemConfig &c, std::string_view k, std::string_view v) { c.*member = to_count(k, v); },
            [member](const SystemConfig &c) { return std::to_string(c.*member); }};
}

Field real_field(double SystemConfig::*member)
{
    return {[member](SystemConfig &c, std::string_view k, std::string_view v) { c.*member = to_double(k, v); },
            [member](const SystemConfig &c) { return fmt_double(c.*member); }};
}

const std::map<std::string, Field, std::less<>> &fields()
{
    static const std::map<std::string, Field, std::less<>> table = [] {
        std::map<std::string, Field, std::less<>> t;
        t["num_aps"] = count_field(&SystemConfig::num_aps);
        t["antennas_per_ap"] = count_field(&SystemConfig::antennas_per_ap);
        t["num_clusters"] = count_field(&SystemConfig::num_clusters);
        t["users_per_cluster"] = count_field(&SystemConfig::users_per_cluster);
        t["coherence_interval"] = count_field(&SystemConfig::coherence_interval);
        t["pilot_power"] = real_field(&SystemConfig::pilot_power);
        t["total_ap_power"] = real_field(&SystemConfig::total_ap_power);
        t["sic_correlation"] = real_field(&SystemConfig::sic_correlation);
        t["rzf_alpha"] = real_field(&SystemConfig::rzf_alpha);
        t["area_side"] = real_field(&SystemConfig::area_side);
        t["breakpoint_d0"] = real_field(&SystemConfig::breakpoint_d0);
        t["breakpoint_d1"] = real_field(&SystemConfig::breakpoint_d1);
        t["carrier_mhz"] = real_field(&SystemConfig::carrier_mhz);
        t["height_ap"] = real_field(&SystemConfig::height_ap);
        t["height_user"] = real_field(&SystemConfig::height_user);
        t["shadow_std_db"] = real_field(&SystemConfig::shadow_std_db);
        t["cluster_radius"] = real_field(&SystemConfig::cluster_radius);
        t["bandwidth_hz"] = real_field(&SystemConfig::bandwidth_hz);
        t["noise_figure_db"] = real_field(&SystemConfig::noise_figure_db);
        t["pathloss_distance_unit"] = real_field(&SystemConfig::pathloss_distance_unit);
        t["min_distance"] = real_field(&SystemConfig::min_distance);
        t["power_split"] = {
            [](SystemConfig &c, std::string_view k, std::string_view v) {
                std::vector<double> split;
                while (!v.empty())
                {
                    const auto comma = v.find(',');
                    split.push_back(to_double(k, trim(v.substr(0, comma))));
                    v = comma == std::string_view::npos ? std::string_view{} : v.substr(comma + 1);
                }
                c.power_split = std::move(split);
            },
            [](const SystemConfig &c) {
                std::string out;
                for (std::size_t i = 0; i < c.power_split.size(); ++i)
                    out += (i ? "," : "") + fmt_double(c.power_split[i]);
                return out;
            }};
        t["scheme"] = {[](SystemConfig &c, std::string_view, std::string_view v) { c.scheme = parse_scheme(v); },
                       [](const SystemConfig &c) { return std::string(to_string(c.scheme)); }};
        return t;
    }();
    return table;
}

} // namespace

void apply_setting(SystemConfig &cfg, std::string_view key, std::string_view value)
{
    key = trim(key);
    value = trim(value);
    if (key == "pilot_power_dbm")
    {
        cfg.pilot_power = dbm_to_watt(to_double(key, value));
        return;
    }
    if (key == "total_ap_power_dbm")
    {
        cfg.total_ap_power = dbm_to_watt(to_double(key, value));
        return;
    }
    const auto it = fields().find(key);
    if (it == fields().end())
        fail(ErrorCode::invalid_config, "unknown config key '" + std::string(key) + "'");
    it->second.set(cfg, key, value);
}

SystemConfig parse_config(std::string_view text, SystemConfig base)
{
    std::size_t line_no = 0;
    while (!text.empty())
    {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorCode::invalid_config, "line " + std::to_string(line_no) + ": expected 'key = value'");
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

SystemConfig load_config(const std::string &path, SystemConfig base)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::io_error, "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

std::string to_text(const SystemConfig &cfg)
{
    std::string out;
    for (const auto &[key, field] : fields())
        out += key + " = " + field.get(cfg) + "\n";
    return out;
}

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    for (const auto &entry : fields())
        keys.push_back(entry.first);
    return keys;
}

std::uint64_t config_hash(const SystemConfig &cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : to_text(cfg))
    {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace cfnoma
