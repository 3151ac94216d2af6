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

#include "cfnoma/validation.hpp"
#include "cfnoma/det_equiv.hpp"
#include "cfnoma/error.hpp"
#include "cfnoma/pipeline.hpp"
#include "cfnoma/scenario.hpp"
#include "cfnoma/seeding.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cfnoma
{

namespace
{

PropertyResult verdict(std::string name, double measured, double tolerance, std::string detail = {})
{
    const bool ok = std::isfinite(measured) && measured <= tolerance;
    return {std::move(name), measured, tolerance, ok, std::move(detail)};
}

double rel(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

NetworkDrop validation_drop(const SystemConfig &cfg, std::uint64_t seed, std::uint64_t index)
{
    SystemConfig geometry = cfg;
    geometry.scheme = Scheme::noma;
    return generate_drop(geometry, derive_seed(seed, SeedPurpose::validation, index));
}

std::vector<PropertyResult> closed_form_vs_mc(const ValidationOptions &opt, Precoder precoder,
                                              std::size_t antennas, std::uint64_t index)
{
    SystemConfig cfg = opt.base;
    cfg.scheme = Scheme::noma;
    cfg.antennas_per_ap = antennas;
    const auto drop = validation_drop(cfg, opt.seed, index);
    const auto prepared = prepare_variant(cfg, drop.beta, {precoder, Scheme::noma, SicMode::imperfect});
    const auto closed = evaluate_closed_form(cfg, prepared);

    McSettings mc;
    mc.trials = opt.trials;
    mc.seed = derive_seed(drop.master_seed, SeedPurpose::small_scale);
    mc.workers = opt.workers;
    EffectiveGainSamples samples;
    const auto empirical = evaluate_monte_carlo(cfg, prepared, mc, &samples);

    double worst = 0.0;
    for (std::size_t i = 0; i < closed.gamma.flat().size(); ++i)
        worst = std::max(worst, rel(empirical.gamma.flat()[i], closed.gamma.flat()[i]));

    const std::string tag(to_string(precoder));
    std::vector<PropertyResult> out;
    out.push_back(verdict(tag + "_closed_form_vs_mc", worst, 0.03,
                          "max relative SINR deviation, L = " + std::to_string(antennas) + ", " +
                              std::to_string(opt.trials) + " trials"));

    const double gain = precoder == Precoder::mrt ? static_cast<double>(antennas)
                                                  : static_cast<double>(antennas - cfg.num_clusters);
    double worst_mean = 0.0;
    const auto &th = prepared.stats.theta;
    for (std::size_t n = 0; n < th.clusters(); ++n)
        for (std::size_t k = 0; k < th.users(); ++k)
        {
            double s = 0.0;
            for (std::size_t m = 0; m < th.aps(); ++m)
                s += std::sqrt(th(m, n, k));
            std::complex<double> mean{};
            for (std::size_t t = 0; t < samples.trials; ++t)
                mean += samples.at(t, n, n, k);
            mean /= static_cast<double>(samples.trials);
            worst_mean = std::max(worst_mean, rel(mean.real(), std::sqrt(gain) * s));
        }
    out.push_back(verdict(tag + "_mean_gain", worst_mean, 0.02, "sample mean of eta against sqrt(G) sum sqrt(theta)"));

    if (precoder == Precoder::fpzf)
        out.push_back(verdict("fpzf_nulling", samples.max_nulling_leak, 1e-10, "absolute max |hhat^H w| across clusters"));
    return out;
}

} // namespace

PropertyResult check_estimation_invariants(const ValidationOptions &opt)
{
    const auto drop = validation_drop(opt.base, opt.seed, 0);
    auto stats = estimation_stats(drop.beta, opt.base.num_clusters, opt.base.pilot_power);
    if (opt.corrupt_theta)
        for (std::size_t i = 0; i < stats.theta.size(); ++i)
            stats.theta.flat()[i] = 1.5 * stats.beta.flat()[i];

    const double root = std::sqrt(stats.tau_pp);
    double worst = 0.0;
    for (std::size_t m = 0; m < stats.beta.aps(); ++m)
        for (std::size_t n = 0; n < stats.beta.clusters(); ++n)
            for (std::size_t k = 0; k < stats.beta.users(); ++k)
            {
                const double b = stats.beta(m, n, k), th = stats.theta(m, n, k);
                worst = std::max(worst, std::max(th - b, -th) / b);
                worst = std::max(worst, rel(th, root * b * stats.c(m, n, k)));
                const double a2 = stats.a(m, n, k) * stats.a(m, n, k);
                const double ref = std::max(b - th, 0.0) / stats.theta_bar(m, n);
                worst = std::max(worst, std::abs(a2 - ref) / std::max(ref, b / stats.theta_bar(m, n)));
            }
    return verdict("estimation_invariants", worst, 1e-12, "0 <= theta <= beta, theta = sqrt(tau p) beta c, a^2");
}

PropertyResult check_wishart_fourth_moment(const ValidationOptions &opt)
{
    const std::size_t L = 8;
    const double theta = 0.7;
    Rng rng(derive_seed(opt.seed, SeedPurpose::validation, 10));
    double acc = 0.0;
    for (std::size_t d = 0; d < opt.moment_draws; ++d)
    {
        double norm2 = 0.0;
        for (std::size_t l = 0; l < L; ++l)
            norm2 += std::norm(complex_normal(rng, theta));
        acc += norm2 * norm2;
    }
    const double mean = acc / static_cast<double>(opt.moment_draws);
    const double ref = static_cast<double>(L * L + L) * theta * theta;
    return verdict("wishart_fourth_moment", rel(mean, ref), 0.02, "E||h||^4 against (L^2 + L) theta^2");
}

PropertyResult check_inverse_wishart_diagonal(const ValidationOptions &opt)
{
    const Eigen::Index L = 16, N = 10;
    const std::size_t draws = std::max<std::size_t>(opt.moment_draws / 5, 1000);
    Rng rng(derive_seed(opt.seed, SeedPurpose::validation, 11));
    std::vector<double> theta_bar(static_cast<std::size_t>(N));
    for (Eigen::Index n = 0; n < N; ++n)
        theta_bar[static_cast<std::size_t>(n)] = 1.0 + 0.5 * static_cast<double>(n);

    Eigen::VectorXd acc = Eigen::VectorXd::Zero(N);
    Eigen::MatrixXcd H(L, N);
    for (std::size_t d = 0; d < draws; ++d)
    {
        for (Eigen::Index n = 0; n < N; ++n)
            for (Eigen::Index l = 0; l < L; ++l)
                H(l, n) = complex_normal(rng, theta_bar[static_cast<std::size_t>(n)]);
        const Eigen::MatrixXcd inv = (H.adjoint() * H).llt().solve(Eigen::MatrixXcd::Identity(N, N));
        acc += inv.diagonal().real();
    }
    double worst = 0.0;
    for (Eigen::Index n = 0; n < N; ++n)
    {
        const double ref = 1.0 / (static_cast<double>(L - N) * theta_bar[static_cast<std::size_t>(n)]);
        worst = std::max(worst, rel(acc(n) / static_cast<double>(draws), ref));
    }
    return verdict("inverse_wishart_diagonal", worst, 0.03, "E[(Hbar^H Hbar)^-1]_nn against 1/((L - N) theta_bar)");
}

PropertyResult check_estimate_parallelism(const ValidationOptions &opt)
{
    const auto drop = validation_drop(opt.base, opt.seed, 0);
    const std::size_t pilots = opt.base.num_clusters;
    const auto stats = estimation_stats(drop.beta, pilots, opt.base.pilot_power);
    const std::uint64_t seed = derive_seed(opt.seed, SeedPurpose::validation, 12);
    auto ch = draw_small_scale(drop.beta, opt.base.antennas_per_ap, derive_seed(seed, SeedPurpose::small_scale));
    pilot_observation(ch, pilots, opt.base.pilot_power, derive_seed(seed, SeedPurpose::pilot_noise));
    mmse_estimate(ch, stats);

    double worst = 0.0;
    for (std::size_t m = 0; m < ch.aps(); ++m)
        for (std::size_t n = 0; n < ch.clusters; ++n)
            for (std::size_t k = 1; k < ch.users; ++k)
            {
                const auto a = ch.hhat[m].col(ch.column(n, 0));
                const auto b = ch.hhat[m].col(ch.column(n, k));
                const double ratio = drop.beta(m, n, 0) / drop.beta(m, n, k);
                worst = std::max(worst, (a - ratio * b).norm() / a.norm());
                worst = std::max(worst, 1.0 - std::abs(a.dot(b)) / (a.norm() * b.norm()));
            }
    return verdict("estimate_parallelism", worst, 1e-12, "hhat_n1 = (beta_n1 / beta_nk) hhat_nk");
}

PropertyResult check_large_antenna_limit(const ValidationOptions &opt)
{
    const auto drop = validation_drop(opt.base, opt.seed, 0);
    const auto stats = estimation_stats(drop.beta, opt.base.num_clusters, opt.base.pilot_power);
    const auto power =
        allocate_power(opt.base.total_ap_power, opt.base.power_split, order_users(ordering_metric_linear(stats)));
    const auto rho = uniform_sic(stats.theta.clusters(), stats.theta.users(), opt.base.sic_correlation);
    const auto gamma = sinr_mrt_noma(stats, power, rho, 1000000);

    double worst = 0.0;
    for (std::size_t n = 0; n < gamma.rows(); ++n)
        for (std::size_t k = 0; k < gamma.cols(); ++k)
        {
            const double limit = sinr_limit_large_L(power, rho, n, k);
            if (std::isfinite(limit))
                worst = std::max(worst, rel(gamma(n, k), limit));
        }
    return verdict("large_antenna_limit", worst, 1e-3, "MRT closed form at L = 1e6 against the L -> inf limit");
}

PropertyResult check_golden_ratio(const ValidationOptions &)
{
    const std::size_t N = 6;
    const auto fp = solve_fixed_point(Table(1, N, 1.0), 1.0, N);
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double worst = 0.0;
    for (const double e : fp.e.flat())
        worst = std::max(worst, std::abs(e - golden));
    return verdict("golden_ratio_fixed_point", worst, 1e-9, "absolute error against (sqrt 5 - 1) / 2");
}

PropertyResult check_det_equiv_oracle(const ValidationOptions &opt)
{
    Rng rng(derive_seed(opt.seed, SeedPurpose::validation, 13));
    std::uniform_int_distribution<std::size_t> pick_n(1, 8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst = 0.0;
    const auto cmp = [&worst](std::span<const double> a, std::span<const double> b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(std::abs(b[i]), 1e-300));
    };
    for (int instance = 0; instance < 20; ++instance)
    {
        const std::size_t N = pick_n(rng);
        const std::size_t L = std::uniform_int_distribution<std::size_t>(std::max<std::size_t>(N, 2), 16)(rng);
        const double alpha = 0.2 * std::pow(25.0, unit(rng));
        Table tb(2, N);
        for (auto &v : tb.flat())
            v = std::pow(10.0, 2.0 * unit(rng));
        std::vector<double> p(N);
        for (auto &v : p)
            v = 0.01 + 0.09 * unit(rng);

        auto fast = solve_det_equiv(tb, alpha, L);
        psi_and_upsilon(fast, p, L);
        const auto slow = det_equiv_matrix_oracle(tb, alpha, L, p);
        cmp(fast.e.flat(), slow.e.flat());
        cmp(fast.t, slow.t);
        cmp(fast.e_prime.flat(), slow.e_prime.flat());
        cmp(fast.e_prime_dir.flat(), slow.e_prime_dir.flat());
        cmp(fast.psi_o.flat(), slow.psi_o.flat());
        if (N > 1)
            cmp(fast.upsilon.flat(), slow.upsilon.flat());
    }
    return verdict("det_equiv_matrix_oracle", worst, 1e-10, "scalar collapse against explicit L x L traces, 20 instances");
}

std::vector<PropertyResult> check_mrt_against_mc(const ValidationOptions &opt)
{
    return closed_form_vs_mc(opt, Precoder::mrt, 8, 1);
}

std::vector<PropertyResult> check_fpzf_against_mc(const ValidationOptions &opt)
{
    return closed_form_vs_mc(opt, Precoder::fpzf, 16, 2);
}

std::vector<PropertyResult> run_validation(const ValidationOptions &opt)
{
    std::vector<PropertyResult> out{
        check_estimation_invariants(opt), check_wishart_fourth_moment(opt), check_inverse_wishart_diagonal(opt),
        check_estimate_parallelism(opt),  check_large_antenna_limit(opt),   check_golden_ratio(opt),
        check_det_equiv_oracle(opt),
    };
    for (auto &r : check_mrt_against_mc(opt))
        out.push_back(std::move(r));
    for (auto &r : check_fpzf_against_mc(opt))
        out.push_back(std::move(r));
    return out;
}

std::vector<CsvRow> validation_rows(const std::vector<PropertyResult> &results, const ValidationOptions &opt)
{
    std::vector<CsvRow> rows;
    for (const auto &r : results)
    {
        CsvRow row;
        row.experiment = "validate:" + r.name;
        row.precoder = r.name.starts_with("fpzf") ? "fpzf" : r.name.starts_with("mrt") ? "mrt" : "none";
        row.scheme = std::string(to_string(Scheme::noma));
        row.sic = std::string(to_string(SicMode::imperfect));
        row.M = opt.base.num_aps;
        row.L = opt.base.antennas_per_ap;
        row.N = opt.base.num_clusters;
        row.K = opt.base.users_per_cluster;
        row.users = row.N * row.K;
        row.alpha = opt.base.rzf_alpha;
        row.seed = opt.seed;
        row.metric = "rel_error";
        row.value = r.measured;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace cfnoma
