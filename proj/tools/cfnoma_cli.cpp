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

#include "cfnoma/error.hpp"
#include "cfnoma/experiments.hpp"
#include "cfnoma/validation.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace cfnoma;

namespace
{

struct Options
{
    std::string config;
    std::vector<std::string> sets;
    std::uint64_t seed = 1;
    std::size_t trials = 2000;
    std::size_t drops = 50;
    std::string out;
    std::string precoder = "all";
    std::string scheme = "both";
    std::string sic = "both";
    std::string source = "closed";
    std::string clusters;
    std::string antennas;
    unsigned workers = 1;
    std::size_t moment_draws = 100000;
    bool corrupt_theta = false;
};

std::size_t to_size(std::string_view s)
{
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        fail(ErrorCode::invalid_config, "not a non-negative integer: '" + std::string(s) + "'");
    return v;
}

// "lo:hi[:step]" or "a,b,c"
std::vector<std::size_t> parse_axis(const std::string &text)
{
    std::vector<std::size_t> out;
    if (text.find(':') != std::string::npos)
    {
        std::vector<std::size_t> parts;
        std::size_t start = 0;
        for (;;)
        {
            const auto colon = text.find(':', start);
            parts.push_back(to_size(std::string_view(text).substr(start, colon - start)));
            if (colon == std::string::npos)
                break;
            start = colon + 1;
        }
        require(parts.size() == 2 || parts.size() == 3, ErrorCode::invalid_config, "range must be lo:hi[:step]");
        const std::size_t step = parts.size() == 3 ? parts[2] : 1;
        require(step > 0 && parts[0] <= parts[1], ErrorCode::invalid_config, "empty range '" + text + "'");
        for (std::size_t v = parts[0]; v <= parts[1]; v += step)
            out.push_back(v);
        return out;
    }
    std::size_t start = 0;
    for (;;)
    {
        const auto comma = text.find(',', start);
        out.push_back(to_size(std::string_view(text).substr(start, comma - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

SystemConfig build_config(const Options &o, SystemConfig base)
{
    if (!o.config.empty())
        base = load_config(o.config, base);
    for (const auto &kv : o.sets)
    {
        const auto eq = kv.find('=');
        require(eq != std::string::npos, ErrorCode::invalid_config, "--set expects key=value, got '" + kv + "'");
        apply_setting(base, kv.substr(0, eq), kv.substr(eq + 1));
    }
    validate(base);
    return base;
}

ExperimentSpec build_spec(const Options &o, ExperimentKind kind, SystemConfig base)
{
    ExperimentSpec s;
    s.kind = kind;
    s.base = build_config(o, base);
    s.seed = o.seed;
    s.trials = o.trials;
    s.drops = o.drops;
    s.workers = o.workers;
    if (o.precoder != "all")
        s.precoders = {parse_precoder(o.precoder)};
    if (o.scheme != "both")
        s.schemes = {parse_scheme(o.scheme)};
    if (o.sic != "both")
        s.sics = {parse_sic(o.sic)};
    s.source = o.source == "mc" ? SourceSelection::mc : o.source == "both" ? SourceSelection::both : SourceSelection::closed;
    return s;
}

void emit(const Options &o, const std::vector<CsvRow> &rows, const std::string &meta)
{
    if (o.out.empty())
    {
        write_csv(std::cout, rows);
        return;
    }
    std::ofstream csv(o.out);
    require(static_cast<bool>(csv), ErrorCode::io_error, "cannot open " + o.out);
    write_csv(csv, rows);
    std::ofstream side(o.out + ".meta");
    require(static_cast<bool>(side), ErrorCode::io_error, "cannot open " + o.out + ".meta");
    side << meta;
}

void common_flags(CLI::App *cmd, Options &o)
{
    cmd->add_option("--config", o.config, "key = value config file");
    cmd->add_option("--set", o.sets, "override one config key (key=value), repeatable");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per drop");
    cmd->add_option("--out", o.out, "CSV output path (stdout if omitted); writes <out>.meta too");
    cmd->add_option("--workers", o.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
}

void experiment_flags(CLI::App *cmd, Options &o)
{
    common_flags(cmd, o);
    cmd->add_option("--drops", o.drops, "network drops")->check(CLI::PositiveNumber);
    cmd->add_option("--precoder", o.precoder)->check(CLI::IsMember({"mrt", "fpzf", "mrzf", "all"}));
    cmd->add_option("--scheme", o.scheme)->check(CLI::IsMember({"noma", "oma", "both"}));
    cmd->add_option("--sic", o.sic)->check(CLI::IsMember({"perfect", "imperfect", "both"}));
    cmd->add_option("--source", o.source, "closed forms, Monte Carlo or both")
        ->check(CLI::IsMember({"closed", "mc", "both"}));
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"cfnoma: downlink rates of cell-free massive MIMO-NOMA"};
    app.require_subcommand(1);
    Options o;

    auto *sweep = app.add_subcommand("sweep-users", "sum rate against the number of clusters");
    experiment_flags(sweep, o);
    sweep->add_option("--clusters", o.clusters, "lo:hi[:step] or a,b,c")->required();

    auto *cdf = app.add_subcommand("cdf", "per-cluster rate samples (defaults M=25, L=60, N=20)");
    experiment_flags(cdf, o);

    auto *de = app.add_subcommand("de-error", "mRZF deterministic equivalent against Monte Carlo (N = L/K)");
    experiment_flags(de, o);
    de->add_option("--antennas", o.antennas, "antenna counts, lo:hi[:step] or a,b,c");

    auto *val = app.add_subcommand("validate", "analytic identities and closed form against Monte Carlo");
    common_flags(val, o);
    val->add_option("--moment-draws", o.moment_draws, "draws for the moment identities");
    val->add_flag("--corrupt-theta", o.corrupt_theta, "negative control: break the estimation invariants");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (sweep->parsed())
        {
            auto spec = build_spec(o, ExperimentKind::sweep_users, {});
            spec.axis = parse_axis(o.clusters);
            emit(o, sweep_users(spec), meta_text(spec));
        }
        else if (cdf->parsed())
        {
            SystemConfig base;
            base.antennas_per_ap = 60;
            base.num_clusters = 20;
            const auto spec = build_spec(o, ExperimentKind::cdf_cluster, base);
            emit(o, cdf_cluster(spec), meta_text(spec));
        }
        else if (de->parsed())
        {
            auto spec = build_spec(o, ExperimentKind::de_error, {});
            spec.axis = parse_axis(o.antennas.empty() ? "8,16,24,32,40" : o.antennas);
            std::vector<DeErrorPoint> summary;
            const auto rows = de_error(spec, &summary);
            emit(o, rows, meta_text(spec));
            for (const auto &p : summary)
                std::cerr << "L=" << p.antennas << " N=" << p.clusters << " mean |rel error| "
                          << p.mean_abs_rel_error << '\n';
        }
        else
        {
            ValidationOptions opt;
            opt.base = build_config(o, {});
            opt.seed = o.seed;
            opt.trials = o.trials;
            opt.moment_draws = o.moment_draws;
            opt.workers = o.workers;
            opt.corrupt_theta = o.corrupt_theta;
            const auto results = run_validation(opt);
            ExperimentSpec spec;
            spec.kind = ExperimentKind::validate;
            spec.base = opt.base;
            spec.seed = opt.seed;
            spec.trials = opt.trials;
            spec.drops = 1;
            emit(o, validation_rows(results, opt), meta_text(spec));
            bool ok = true;
            for (const auto &r : results)
            {
                std::cerr << (r.passed ? "pass " : "FAIL ") << r.name << ": " << r.measured << " (tol "
                          << r.tolerance << ") " << r.detail << '\n';
                ok = ok && r.passed;
            }
            return ok ? 0 : 1;
        }
    }
    catch (const Error &e)
    {
        std::cerr << "cfnoma: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
