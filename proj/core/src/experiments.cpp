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

#include "cfnoma/experiments.hpp"
#include "cfnoma/error.hpp"
#include "cfnoma/scenario.hpp"
#include "cfnoma/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace cfnoma
{

std::string_view to_string(ExperimentKind kind) noexcept
{
    switch (kind)
    {
    case ExperimentKind::sweep_users: return "sweep-users";
    case ExperimentKind::cdf_cluster: return "cdf";
    case ExperimentKind::de_error: return "de-error";
    case ExperimentKind::validate: return "validate";
    }
    return "unknown";
}

std::uint64_t drop_seed(std::uint64_t master, std::uint64_t key, std::size_t drop) noexcept
{
    return derive_seed(derive_seed(master, SeedPurpose::drop, key), SeedPurpose::drop, drop);
}

namespace
{

CsvRow base_row(const SystemConfig &cfg, std::string experiment, const Variant &v)
{
    CsvRow r;
    r.experiment = std::move(experiment);
    r.precoder = std::string(to_string(v.precoder));
    r.scheme = std::string(to_string(v.scheme));
    r.sic = std::string(to_string(v.sic));
    r.M = cfg.num_aps;
    r.L = cfg.antennas_per_ap;
    r.N = cfg.num_clusters;
    r.K = cfg.users_per_cluster;
    r.users = cfg.num_clusters * cfg.users_per_cluster;
    r.alpha = cfg.rzf_alpha;
    return r;
}

std::vector<Variant> variants_of(const ExperimentSpec &spec)
{
    std::vector<Variant> out;
    for (auto p : spec.precoders)
        for (auto s : spec.schemes)
            for (auto sic : spec.sics)
                out.push_back({p, s, sic});
    return out;
}

struct SourceTag
{
    bool mc;
    std::string experiment;
};

std::vector<SourceTag> sources_of(const ExperimentSpec &spec)
{
    const std::string name(to_string(spec.kind));
    std::vector<SourceTag> out;
    if (spec.source != SourceSelection::mc)
        out.push_back({false, name});
    if (spec.source != SourceSelection::closed)
        out.push_back({true, name + ":mc"});
    return out;
}

std::size_t pilots_for(const SystemConfig &cfg, Scheme scheme)
{
    return scheme == Scheme::noma ? cfg.num_clusters : cfg.num_clusters * cfg.users_per_cluster;
}

bool feasible(const SystemConfig &cfg, const Variant &v)
{
    const std::size_t pilots = pilots_for(cfg, v.scheme);
    if (pilots > cfg.coherence_interval)
        return false;
    return !(v.precoder == Precoder::fpzf && cfg.antennas_per_ap <= pilots);
}

std::vector<NetworkDrop> make_drops(const SystemConfig &cfg, const ExperimentSpec &spec, std::uint64_t key)
{
    SystemConfig geometry = cfg;
    geometry.scheme = Scheme::noma;
    std::vector<NetworkDrop> drops;
    drops.reserve(spec.drops);
    for (std::size_t d = 0; d < spec.drops; ++d)
        drops.push_back(generate_drop(geometry, drop_seed(spec.seed, key, d)));
    return drops;
}

RateReport evaluate(const SystemConfig &cfg, const PreparedVariant &p, const ExperimentSpec &spec,
                    const NetworkDrop &drop, bool mc)
{
    if (!mc)
        return evaluate_closed_form(cfg, p);
    McSettings s;
    s.trials = spec.trials;
    s.seed = derive_seed(drop.master_seed, SeedPurpose::small_scale);
    s.workers = spec.workers;
    return evaluate_monte_carlo(cfg, p, s);
}

std::vector<double> cluster_rates(const RateReport &r, std::size_t clusters, std::size_t users, Scheme scheme)
{
    if (scheme == Scheme::noma)
        return r.per_cluster;
    const Table grid = to_user_grid(r.rate, clusters, users, scheme);
    std::vector<double> out(clusters, 0.0);
    for (std::size_t n = 0; n < clusters; ++n)
        for (std::size_t k = 0; k < users; ++k)
            if (std::isfinite(grid(n, k)))
                out[n] += grid(n, k);
    return out;
}

double mean_of(const std::vector<double> &v)
{
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void require_drops(const ExperimentSpec &spec)
{
    require(spec.drops > 0, ErrorCode::invalid_config, "need at least one drop");
}

} // namespace

std::vector<CsvRow> sweep_users(const ExperimentSpec &spec)
{
    require_drops(spec);
    require(!spec.axis.empty(), ErrorCode::invalid_config, "sweep-users needs a cluster axis");
    std::vector<CsvRow> rows;
    for (const std::size_t N : spec.axis)
    {
        SystemConfig cfg = spec.base;
        cfg.num_clusters = N;
        const auto variants = variants_of(spec);
        const bool any = std::any_of(variants.begin(), variants.end(),
                                     [&](const Variant &v) { return feasible(cfg, v); });
        const auto drops = any ? make_drops(cfg, spec, N) : std::vector<NetworkDrop>{};

        for (const auto &v : variants)
        {
            SystemConfig vcfg = cfg;
            vcfg.scheme = v.scheme;
            const bool ok = feasible(cfg, v);
            const bool zero_prelog = ok && pilots_for(cfg, v.scheme) == cfg.coherence_interval;
            for (const auto &src : sources_of(spec))
            {
                CsvRow row = base_row(vcfg, src.experiment, v);
                if (!ok)
                {
                    row.seed = spec.seed;
                    row.metric = "infeasible";
                    rows.push_back(row);
                    continue;
                }
                std::vector<double> sums;
                for (std::size_t d = 0; d < drops.size(); ++d)
                {
                    double value = 0.0;
                    if (!zero_prelog)
                    {
                        const auto prepared = prepare_variant(vcfg, drops[d].beta, v);
                        value = evaluate(vcfg, prepared, spec, drops[d], src.mc).sum_rate;
                    }
                    sums.push_back(value);
                    row.drop = std::to_string(d);
                    row.seed = drops[d].master_seed;
                    row.metric = "sum_rate";
                    row.value = value;
                    rows.push_back(row);
                }
                row.drop = "mean";
                row.seed = spec.seed;
                row.value = mean_of(sums);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::vector<CsvRow> cdf_cluster(const ExperimentSpec &spec)
{
    require_drops(spec);
    const SystemConfig &cfg = spec.base;
    const auto variants = variants_of(spec);
    const bool any =
        std::any_of(variants.begin(), variants.end(), [&](const Variant &v) { return feasible(cfg, v); });
    const auto drops = any ? make_drops(cfg, spec, 0) : std::vector<NetworkDrop>{};

    std::vector<CsvRow> rows;
    for (const auto &v : variants)
    {
        SystemConfig vcfg = cfg;
        vcfg.scheme = v.scheme;
        for (const auto &src : sources_of(spec))
        {
            CsvRow row = base_row(vcfg, src.experiment, v);
            if (!feasible(cfg, v))
            {
                row.seed = spec.seed;
                row.metric = "infeasible";
                rows.push_back(row);
                continue;
            }
            const bool zero_prelog = pilots_for(cfg, v.scheme) == cfg.coherence_interval;
            for (std::size_t d = 0; d < drops.size(); ++d)
            {
                std::vector<double> rates(cfg.num_clusters, 0.0);
                if (!zero_prelog)
                {
                    const auto prepared = prepare_variant(vcfg, drops[d].beta, v);
                    rates = cluster_rates(evaluate(vcfg, prepared, spec, drops[d], src.mc), cfg.num_clusters,
                                          cfg.users_per_cluster, v.scheme);
                }
                row.drop = std::to_string(d);
                row.seed = drops[d].master_seed;
                row.metric = "per_cluster_rate";
                for (const double r : rates)
                {
                    row.value = r;
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

std::vector<CsvRow> de_error(const ExperimentSpec &spec, std::vector<DeErrorPoint> *summary)
{
    require_drops(spec);
    require(!spec.axis.empty(), ErrorCode::invalid_config, "de-error needs an antenna axis");
    const std::size_t K = spec.base.users_per_cluster;
    const std::string name(to_string(ExperimentKind::de_error));

    std::vector<CsvRow> rows;
    for (const std::size_t L : spec.axis)
    {
        require(L % K == 0, ErrorCode::invalid_config,
                "de-error needs L divisible by K (L = " + std::to_string(L) + ")");
        SystemConfig cfg = spec.base;
        cfg.scheme = Scheme::noma;
        cfg.antennas_per_ap = L;
        cfg.num_clusters = L / K;
        const auto drops = make_drops(cfg, spec, L);

        for (const auto sic : spec.sics)
        {
            const Variant v{Precoder::mrzf, Scheme::noma, sic};
            DeErrorPoint point{L, cfg.num_clusters, {}, 0.0};
            std::vector<double> r_de, r_mc;
            CsvRow row = base_row(cfg, name, v);
            CsvRow mc_row = base_row(cfg, name + ":mc", v);
            for (std::size_t d = 0; d < drops.size(); ++d)
            {
                const auto prepared = prepare_variant(cfg, drops[d].beta, v);
                const double de = evaluate(cfg, prepared, spec, drops[d], false).sum_rate;
                const double mc = evaluate(cfg, prepared, spec, drops[d], true).sum_rate;
                const double rel = (mc - de) / mc;
                r_de.push_back(de);
                r_mc.push_back(mc);
                point.rel_error.push_back(rel);

                for (CsvRow *r : {&row, &mc_row})
                {
                    r->drop = std::to_string(d);
                    r->seed = drops[d].master_seed;
                    r->metric = "sum_rate";
                }
                row.value = de;
                rows.push_back(row);
                mc_row.value = mc;
                rows.push_back(mc_row);
                row.metric = "rel_error";
                row.value = rel;
                rows.push_back(row);
            }
            for (CsvRow *r : {&row, &mc_row})
            {
                r->drop = "mean";
                r->seed = spec.seed;
                r->metric = "sum_rate";
            }
            row.value = mean_of(r_de);
            rows.push_back(row);
            mc_row.value = mean_of(r_mc);
            rows.push_back(mc_row);
            row.metric = "rel_error";
            row.value = mean_of(point.rel_error);
            rows.push_back(row);

            double abs_sum = 0.0;
            for (const double e : point.rel_error)
                abs_sum += std::abs(e);
            point.mean_abs_rel_error = abs_sum / static_cast<double>(point.rel_error.size());
            if (summary)
                summary->push_back(std::move(point));
        }
    }
    return rows;
}

double empirical_quantile(std::vector<double> values, double q)
{
    require(!values.empty(), ErrorCode::invalid_config, "quantile of an empty sample");
    require(q >= 0.0 && q <= 1.0, ErrorCode::invalid_config, "quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

std::string meta_text(const ExperimentSpec &spec)
{
    std::ostringstream out;
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(spec.base)));
    out << "kind = " << to_string(spec.kind) << '\n'
        << "seed = " << spec.seed << '\n'
        << "drops = " << spec.drops << '\n'
        << "trials = " << spec.trials << '\n'
        << "config_hash = " << hash << '\n'
        << "axis =";
    for (std::size_t i = 0; i < spec.axis.size(); ++i)
        out << (i ? "," : " ") << spec.axis[i];
    out << "\n# config\n" << to_text(spec.base);
    return out.str();
}

} // namespace cfnoma
