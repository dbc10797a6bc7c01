// SPDX-License-Identifier: Apache-2.0
//
// xlris-beamtrain: near-field beam training simulation for XL-RIS links
// Copyright (C) 2026 The xlris-beamtrain authors
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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hpp"

#include <xlris/xlris.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace xlris;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::string detail;
    };

    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point t0)
    {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    std::string fmt(const char *f, double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, f, v);
        return buf;
    }

    oracle::Panel panel_of(const SystemConfig &c)
    {
        return {c.ris_rows, c.ris_cols, c.wavelength(), c.spacing_wavelengths * c.wavelength()};
    }

    oracle::Grid grid_of(const SystemConfig &c)
    {
        return {c.grid.s_x, c.grid.s_y, c.grid.delta_x, c.grid.delta_y, c.grid.x_min, c.grid.y_min, c.user_height};
    }

    Outcome steering_invariants()
    {
        const auto t0 = Clock::now();
        const ArrayGeometry g(8, 8, speed_of_light / 30e9);
        const double expect = 1.0 / 8.0;
        double worst = 0.0;
        Rng rng(1);
        for (int i = 0; i < 10000; ++i)
        {
            const Position3D t{rng.uniform(-50, 50), rng.uniform(-30, 30), rng.uniform(-5, 5)};
            for (const auto &e : near_field_steering(t, g))
                worst = std::max(worst, std::abs(std::abs(e) - expect));
        }
        const double secs = seconds_since(t0);
        return {worst <= 1e-12 && secs < 5.0,
                "10000 vectors, max |modulus - 1/sqrt(N)| = " + fmt("%.3g", worst) + ", " + fmt("%.2f s", secs)};
    }

    Outcome far_field_limit()
    {
        const auto t0 = Clock::now();
        const ArrayGeometry g(8, 8, speed_of_light / 30e9);
        const double r = 10.0 * rayleigh_distance(aperture(g), g.wavelength());
        Rng rng(2);
        double worst = 1.0;
        int n = 0;
        while (n < 100)
        {
            const double ux = rng.uniform(-1, 1), uy = rng.uniform(0, 1), uz = rng.uniform(-1, 1);
            const double norm = std::sqrt(ux * ux + uy * uy + uz * uz);
            if (norm > 1.0 || norm < 0.1)
                continue;
            const Position3D t{r * ux / norm, r * uy / norm, r * uz / norm};
            const auto sf = spatial_frequency_of(t);
            worst = std::min(worst, std::abs(dot_t(conj(near_field_steering(t, g)), far_field_steering(sf.u, sf.v, g))));
            ++n;
        }
        const double secs = seconds_since(t0);
        return {worst >= 0.95 && secs < 5.0,
                "100 directions at 10 Z, min correlation = " + fmt("%.6f", worst) + ", " + fmt("%.2f s", secs)};
    }

    Outcome oracle_equivalence()
    {
        const auto t0 = Clock::now();
        const auto cfg = desk_scale_config();
        const auto cb = build_near_field_codebook(cfg);
        int match = 0;
        for (std::uint64_t i = 0; i < 100; ++i)
        {
            Rng rng = Rng::derived(3, i);
            const auto chan = sample_channel(cfg, rng);
            const auto u = chan.user_position;
            match += true_optimal(cb, chan) == oracle::best_grid_index(panel_of(cfg), grid_of(cfg), {u.x, u.y, u.z});
        }
        const double secs = seconds_since(t0);
        return {match == 100 && cb.size() == 240 && secs < 30.0,
                std::to_string(match) + "/100 channels match on " + std::to_string(cb.size()) + " codewords, " +
                    fmt("%.2f s", secs)};
    }

    Outcome aligned_gain_identity()
    {
        auto cfg = desk_scale_config();
        cfg.paths_bs = cfg.paths_user = 1;
        const auto cb = build_near_field_codebook(cfg);
        Rng pick(4);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i)
        {
            const std::size_t s = 1 + pick.below(cb.size());
            ChannelRealization chan;
            chan.user_position = cb.point(s);
            chan.terms.push_back({1.0, effective_near_field_steering(chan.user_position, cfg.g_scatter, cfg.ris())});
            Rng rng(i);
            const auto r = exhaustive_sweep(cb, chan, NoiseModel::noiseless(), rng);
            const double g = normalized_gain(cb.codeword(r.chosen_flat_index), cb.codeword(s), chan);
            worst = std::max(worst, std::abs(g - 1.0));
        }
        return {worst <= 1e-9, "200 on-grid users, max |gain - 1| = " + fmt("%.3g", worst)};
    }

    Outcome set_and_count_laws()
    {
        Rng rng(5);
        int violations = 0;
        const ArrayGeometry g(2, 2, speed_of_light / 30e9);
        const Position3D gs{20, 20, 0};
        for (int trial = 0; trial < 1000; ++trial)
        {
            const std::size_t sx = 1 + rng.below(16), sy = 1 + rng.below(16), total = sx * sy;
            const std::size_t d = 1 + rng.below(total), k = 1 + rng.below(sx), l = 1 + rng.below(sy);
            const GridSpec grid{sx, sy, 1.0, 1.0, -double(sx) / 2, 1.0};
            const auto probes = subsample(total, d);
            std::vector<double> px(sx), py(sy);
            double a = 0, b = 0;
            for (auto &v : px)
                a += (v = rng.uniform());
            for (auto &v : py)
                b += (v = rng.uniform());
            for (auto &v : px)
                v /= a;
            for (auto &v : py)
                v /= b;
            const auto sets = candidate_sets(top_indices(px, k), top_indices(py, l), grid, probes);
            for (auto s : sets.reprobe)
                violations += probes.contains(s);
            std::vector<std::size_t> uni(sets.reprobe);
            uni.insert(uni.end(), sets.reused.begin(), sets.reused.end());
            std::sort(uni.begin(), uni.end());
            violations += uni != sets.candidates;
            violations += probes.size() != total / d;
            if (probes.size() == 0)
                continue;
            const auto cb = build_near_field_codebook(grid, g, gs, 0.0);
            ChannelRealization chan;
            chan.terms.push_back({1.0, effective_near_field_steering({0.2, 3.1, 0}, gs, g)});
            const auto y = probe_subset(cb, probes, chan, NoiseModel::from_snr_db(0.0), rng);
            violations += y.size() != total / d;
            const auto r = refine_candidates(cb, probes, y, {px, py}, k, l, chan, NoiseModel::from_snr_db(0.0), rng);
            violations += r.probes_used > probes.size() + k * l;
            violations += r.probes_used != probes.size() + sets.reprobe.size();
        }
        int bijection_errors = 0;
        for (std::size_t s = 1; s <= 240; ++s)
        {
            const auto [sx, sy] = index_pair(s, 20, 12);
            bijection_errors += flat_index(sx, sy, 20, 12) != s;
        }
        return {violations == 0 && bijection_errors == 0,
                "1000 random draws, " + std::to_string(violations) + " law violations, " +
                    std::to_string(bijection_errors) + " bijection errors over 240 indices"};
    }

    Outcome full_scale_counting()
    {
        const auto t0 = Clock::now();
        const auto cfg = full_scale_config();
        const auto near = build_near_field_codebook(cfg);
        const auto far = build_far_field_codebook(cfg.ris());
        const auto probes = subsample(near.size(), 20);
        const OneHotOraclePredictor pred(cfg.grid.s_x, cfg.grid.s_y);
        std::size_t fbt_probes = 0, pnbt_probes = 0, imp_max = 0;
        for (std::uint64_t i = 0; i < 3; ++i)
        {
            Rng rng = Rng::derived(6, i);
            auto chan = sample_channel(cfg, rng);
            chan.true_optimal_flat_index = true_optimal(near, chan);
            const auto noise = NoiseModel::from_snr_db(10.0);
            fbt_probes = fbt(far, near, pred, chan, noise, rng).probes_used;
            pnbt_probes = pnbt(near, probes, pred, chan, noise, rng).probes_used;
            imp_max = std::max(imp_max, improved_pnbt(near, probes, pred, 2, 5, chan, noise, rng).probes_used);
        }
        const double secs = seconds_since(t0);
        const double saving_fbt = 1.0 - double(fbt_probes) / double(near.size());
        const double saving_pnbt = 1.0 - double(pnbt_probes) / double(near.size());
        return {fbt_probes == 512 && pnbt_probes == 300 && imp_max <= 310 && near.size() == 6000 && secs < 60.0,
                "FBT " + std::to_string(fbt_probes) + ", PNBT " + std::to_string(pnbt_probes) + ", improved max " +
                    std::to_string(imp_max) + " of " + std::to_string(near.size()) + " (overhead cut " +
                    fmt("%.1f%%", 100 * saving_fbt) + " / " + fmt("%.1f%%", 100 * saving_pnbt) + "), " +
                    fmt("%.2f s", secs)};
    }

    Outcome oracle_pipeline()
    {
        ExperimentConfig cfg;
        cfg.system = desk_scale_config();
        cfg.system.paths_bs = cfg.system.paths_user = 1;
        cfg.schemes = {SchemeKind::improved_pnbt};
        cfg.snr_db = {std::numeric_limits<double>::infinity()};
        cfg.n_trials = 500;
        cfg.params.interval = 8;
        const auto rows = run_evaluate(cfg);
        const auto csv1 = results_to_csv(rows);
        const auto csv2 = results_to_csv(run_evaluate(cfg));

        auto multi = cfg;
        multi.system = desk_scale_config();
        const double multipath_gain = run_evaluate(multi)[0].mean_norm_gain;
        return {rows[0].mean_norm_gain == 1.0 && csv1 == csv2,
                "500 trials, mean gain " + fmt("%.10g", rows[0].mean_norm_gain) + ", CSV identical: " +
                    (csv1 == csv2 ? "yes" : "no") + " (with weak paths: " + fmt("%.6f", multipath_gain) + ")"};
    }

    Outcome dataset_integrity()
    {
        const auto t0 = Clock::now();
        const auto cfg = desk_scale_config();
        const auto m = make_manifest(cfg, ProbeKind::near_subsampled, 8, 10.0, 20000, 7);
        const auto ds = generate_dataset(m);
        const auto dir = fs::temp_directory_path() / "xlris-acceptance-dataset";
        fs::remove_all(dir);
        write_dataset(ds, dir);
        const auto back = read_dataset(dir);
        const bool exact = back.features.size() == ds.features.size() &&
                           std::memcmp(back.features.data(), ds.features.data(), ds.features.size() * 4) == 0 &&
                           back.labels == ds.labels;
        fs::remove_all(dir);

        int verified = 0;
        Rng pick(8);
        for (int i = 0; i < 100; ++i)
        {
            const std::size_t row = pick.below(ds.size());
            Rng rng(0);
            const auto chan = regenerate_channel(m, row, rng);
            const auto u = chan.user_position;
            const auto [sx, sy] = ds.label(row);
            verified += (sy - 1) * cfg.grid.s_x + sx == oracle::best_grid_index(panel_of(cfg), grid_of(cfg), {u.x, u.y, u.z});
        }
        const auto [train, eval] = split(ds, 0.9, 7);
        const double secs = seconds_since(t0);
        return {exact && verified == 100 && train.size() == 18000 && eval.size() == 2000,
                std::string("roundtrip ") + (exact ? "bit-exact" : "MISMATCH") + ", " + std::to_string(verified) +
                    "/100 labels verified, split " + std::to_string(train.size()) + "/" +
                    std::to_string(eval.size()) + ", " + fmt("%.2f s", secs)};
    }
}

int main()
{
    const std::pair<const char *, std::function<Outcome()>> checks[] = {
        {"steering-invariants", steering_invariants},
        {"far-field-limit", far_field_limit},
        {"oracle-equivalence", oracle_equivalence},
        {"aligned-gain-identity", aligned_gain_identity},
        {"set-count-laws", set_and_count_laws},
        {"full-scale-counting", full_scale_counting},
        {"one-hot-oracle-pipeline", oracle_pipeline},
        {"dataset-integrity", dataset_integrity},
    };
    int failures = 0;
    for (const auto &[name, fn] : checks)
    {
        Outcome o;
        try
        {
            o = fn();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu acceptance checks passed\n", int(std::size(checks)) - failures, std::size(checks));
    return failures ? 1 : 0;
}
