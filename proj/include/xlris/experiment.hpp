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

#ifndef XLRIS_EXPERIMENT_HPP
#define XLRIS_EXPERIMENT_HPP

#include "channel.hpp"
#include "codebook.hpp"
#include "config.hpp"
#include "config_json.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "external_predictor.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "predictor.hpp"
#include "rng.hpp"
#include "schemes.hpp"
#include "tensor_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace xlris
{
    enum class SchemeKind
    {
        exhaustive,
        hierarchical,
        fbt,
        pnbt,
        improved_pnbt,
    };

    inline std::string_view to_string(SchemeKind k)
    {
        switch (k)
        {
        case SchemeKind::exhaustive:
            return "exhaustive";
        case SchemeKind::hierarchical:
            return "hierarchical";
        case SchemeKind::fbt:
            return "fbt";
        case SchemeKind::pnbt:
            return "pnbt";
        case SchemeKind::improved_pnbt:
            return "improved_pnbt";
        }
        return "?";
    }

    inline SchemeKind scheme_from_string(std::string_view s)
    {
        for (auto k : {SchemeKind::exhaustive, SchemeKind::hierarchical, SchemeKind::fbt, SchemeKind::pnbt,
                       SchemeKind::improved_pnbt})
            if (s == to_string(k))
                return k;
        throw ConfigError("unknown scheme '" + std::string(s) + "'");
    }

    inline bool uses_predictor(SchemeKind k)
    {
        return k == SchemeKind::fbt || k == SchemeKind::pnbt || k == SchemeKind::improved_pnbt;
    }

    struct SchemeParams
    {
        std::size_t interval = 20; // D
        std::size_t top_k = 2;     // K
        std::size_t top_l = 5;     // L
        std::size_t coarsening = 5;
        double total_slots = 3000.0; // T_tot per coherence interval
    };

    // kind: "oracle" | "uniform" | "external" (command required)
    struct PredictorBinding
    {
        std::string kind = "oracle";
        std::string command;
    };

    struct ExperimentConfig
    {
        SystemConfig system = desk_scale_config();
        std::vector<SchemeKind> schemes{SchemeKind::exhaustive, SchemeKind::pnbt, SchemeKind::improved_pnbt};
        SchemeParams params;
        std::vector<double> snr_db{0.0, 10.0, 20.0}; // +inf = noiseless
        std::size_t n_trials = 100;
        std::uint64_t seed = 1;
        PredictorBinding predictor;
        std::string output;      // results CSV path (evaluate) or dataset directory (generate)
        std::size_t threads = 0; // 0 = hardware concurrency

        // generate-only
        ProbeKind probe_type = ProbeKind::near_subsampled;
        std::size_t n_samples = 2000;
        std::optional<double> train_snr_db = 10.0; // nullopt = noiseless features
        std::optional<double> split_fraction;

        void validate() const
        {
            system.validate();
            if (n_trials < 1)
                throw ConfigError("n_trials must be at least 1");
            if (snr_db.empty())
                throw ConfigError("the SNR list is empty");
            for (double s : snr_db)
                if (std::isnan(s) || s == -std::numeric_limits<double>::infinity())
                    throw ConfigError("SNR values must be finite or +inf");
            if (params.interval < 1)
                throw ConfigError("D must be at least 1");
            if (params.coarsening < 1)
                throw ConfigError("coarsening factor must be at least 1");
            if (params.top_k < 1 || params.top_k > system.grid.s_x || params.top_l < 1 || params.top_l > system.grid.s_y)
                throw ConfigError("K must lie in [1, S_x] and L in [1, S_y]");
            if (!(params.total_slots > 0.0))
                throw ConfigError("total_slots must be positive");
            if (predictor.kind != "oracle" && predictor.kind != "uniform" && predictor.kind != "external")
                throw ConfigError("unknown predictor kind '" + predictor.kind + "'");
            if (predictor.kind == "external" && predictor.command.empty())
                throw ConfigError("external predictor needs a command");
        }
    };

    struct ResultRow
    {
        std::string scheme;
        double snr_db = 0.0;
        std::size_t n_trials = 0;
        double mean_rate = 0.0;
        double mean_norm_gain = 0.0;
        double mean_eff_rate = 0.0;
        double mean_probes = 0.0;
    };

    // Builds the predictor used for one probe type. `request` describes the probe layout.
    using PredictorFactory = std::function<std::unique_ptr<Predictor>(const DatasetManifest &request)>;

    inline PredictorFactory default_predictor_factory(const PredictorBinding &binding)
    {
        return [binding](const DatasetManifest &req) -> std::unique_ptr<Predictor>
        {
            if (binding.kind == "oracle")
                return std::make_unique<OneHotOraclePredictor>(req.s_x, req.s_y);
            if (binding.kind == "uniform")
                return std::make_unique<UniformPredictor>(req.s_x, req.s_y);
            if (binding.kind == "external")
                return std::make_unique<ExternalPredictor>(binding.command, req);
            throw ConfigError("unknown predictor kind '" + binding.kind + "'");
        };
    }

    namespace detail
    {
        // Fixed per-scheme stream tag, independent of the scheme list order
        inline std::uint64_t scheme_stream(SchemeKind k) { return 0x100u + std::uint64_t(k); }

        struct Trial
        {
            ChannelRealization chan;
            std::size_t optimum = 0;
        };
    }

    // Monte-Carlo evaluation: one row per (SNR, scheme), in SNR-major then scheme-list order.
    // Trial t draws its channel from Rng::derived(seed, t) for every cell; noise for cell
    // (snr index i, scheme k) comes from Rng::derived(derive_seed(seed, t), (i << 16) | tag(k)).
    inline std::vector<ResultRow> run_evaluate(const ExperimentConfig &cfg, PredictorFactory factory = {})
    {
        cfg.validate();
        if (!factory)
            factory = default_predictor_factory(cfg.predictor);
        const auto &sys = cfg.system;
        const auto near = build_near_field_codebook(sys);
        const auto &grid = near.grid;

        bool need_far = false, need_near_probes = false;
        for (auto k : cfg.schemes)
        {
            need_far = need_far || k == SchemeKind::fbt;
            need_near_probes = need_near_probes || k == SchemeKind::pnbt || k == SchemeKind::improved_pnbt;
        }
        std::optional<FarFieldCodebook> far;
        if (need_far)
            far = build_far_field_codebook(sys.ris());
        const ProbeSet probes = need_near_probes ? subsample(near.size(), cfg.params.interval) : ProbeSet{};
        if (need_near_probes && probes.size() == 0)
            throw ConfigError("D exceeds the codebook size; PNBT has no probes");

        std::vector<detail::Trial> trials(cfg.n_trials);
        parallel_for(
            cfg.n_trials,
            [&](std::size_t t)
            {
                Rng rng = Rng::derived(cfg.seed, t);
                trials[t].chan = sample_channel(sys, rng);
                trials[t].optimum = true_optimal(near, trials[t].chan);
                trials[t].chan.true_optimal_flat_index = trials[t].optimum;
            },
            cfg.threads);

        std::unique_ptr<Predictor> far_predictor, near_predictor;
        if (need_far)
            far_predictor = factory(make_manifest(sys, ProbeKind::far_field, std::nullopt, std::nullopt, 0, cfg.seed));
        if (need_near_probes)
            near_predictor =
                factory(make_manifest(sys, ProbeKind::near_subsampled, cfg.params.interval, std::nullopt, 0, cfg.seed));

        std::vector<ResultRow> rows;
        for (std::size_t si = 0; si < cfg.snr_db.size(); ++si)
        {
            const double snr = cfg.snr_db[si];
            const NoiseModel noise = NoiseModel::from_snr_db(snr);
            for (auto kind : cfg.schemes)
            {
                std::vector<Rng> rngs;
                rngs.reserve(cfg.n_trials);
                for (std::size_t t = 0; t < cfg.n_trials; ++t)
                    rngs.push_back(Rng::derived(derive_seed(cfg.seed, t), (std::uint64_t(si) << 16) | detail::scheme_stream(kind)));

                std::vector<SchemeResult> results(cfg.n_trials);
                if (!uses_predictor(kind))
                {
                    parallel_for(
                        cfg.n_trials,
                        [&](std::size_t t)
                        {
                            results[t] = kind == SchemeKind::exhaustive
                                             ? exhaustive_sweep(near, trials[t].chan, noise, rngs[t])
                                             : hierarchical_search(near, cfg.params.coarsening, trials[t].chan, noise,
                                                                   rngs[t]);
                        },
                        cfg.threads);
                }
                else
                {
                    // Phase 1: probes. Phase 2: one batched prediction for the whole cell. Phase 3: selection.
                    std::vector<ComplexVector> y(cfg.n_trials);
                    parallel_for(
                        cfg.n_trials,
                        [&](std::size_t t)
                        {
                            y[t] = kind == SchemeKind::fbt ? probe_far_field(*far, trials[t].chan, noise, rngs[t])
                                                           : probe_subset(near, probes, trials[t].chan, noise, rngs[t]);
                        },
                        cfg.threads);
                    std::vector<PredictionRequest> batch(cfg.n_trials);
                    for (std::size_t t = 0; t < cfg.n_trials; ++t)
                        batch[t] = {y[t], trials[t].optimum};
                    const Predictor &pred = kind == SchemeKind::fbt ? *far_predictor : *near_predictor;
                    const auto predictions = pred.predict(batch);
                    if (predictions.size() != cfg.n_trials)
                        throw PredictorContractError("predictor returned " + std::to_string(predictions.size()) +
                                                     " rows for " + std::to_string(cfg.n_trials) + " requests");
                    parallel_for(
                        cfg.n_trials,
                        [&](std::size_t t)
                        {
                            if (kind == SchemeKind::improved_pnbt)
                                results[t] = refine_candidates(near, probes, y[t], predictions[t], cfg.params.top_k,
                                                               cfg.params.top_l, trials[t].chan, noise, rngs[t]);
                            else
                                results[t] = {select_from_prediction(predictions[t], grid),
                                              kind == SchemeKind::fbt ? far->size() : probes.size(), predictions[t]};
                        },
                        cfg.threads);
                }

                ResultRow row;
                row.scheme = std::string(to_string(kind));
                row.snr_db = snr;
                row.n_trials = cfg.n_trials;
                for (std::size_t t = 0; t < cfg.n_trials; ++t)
                {
                    const auto m = trial_metrics(near.codeword(results[t].chosen_flat_index),
                                                 near.codeword(trials[t].optimum), trials[t].chan, noise.sigma2,
                                                 results[t].probes_used, cfg.params.total_slots);
                    row.mean_rate += m.achievable_rate;
                    row.mean_norm_gain += m.normalized_gain;
                    row.mean_eff_rate += m.effective_rate;
                    row.mean_probes += double(m.probes_used);
                }
                const double n = double(cfg.n_trials);
                row.mean_rate /= n;
                row.mean_norm_gain /= n;
                row.mean_eff_rate /= n;
                row.mean_probes /= n;
                rows.push_back(row);
            }
        }
        return rows;
    }

    // ---- CSV ----

    inline constexpr const char *results_csv_header =
        "scheme,snr_db,n_trials,mean_rate,mean_norm_gain,mean_eff_rate,mean_probes";

    inline std::string format_number(double v)
    {
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        if (std::isnan(v))
            return "nan";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    }

    inline double parse_number(const std::string &s)
    {
        if (s == "inf" || s == "+inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        std::size_t pos = 0;
        double v = 0.0;
        try
        {
            v = std::stod(s, &pos);
        }
        catch (const std::exception &)
        {
            throw ConfigError("not a number: '" + s + "'");
        }
        if (pos != s.size())
            throw ConfigError("not a number: '" + s + "'");
        return v;
    }

    inline std::string results_to_csv(const std::vector<ResultRow> &rows)
    {
        std::ostringstream os;
        os << results_csv_header << '\n';
        for (const auto &r : rows)
            os << r.scheme << ',' << format_number(r.snr_db) << ',' << r.n_trials << ',' << format_number(r.mean_rate)
               << ',' << format_number(r.mean_norm_gain) << ',' << format_number(r.mean_eff_rate) << ','
               << format_number(r.mean_probes) << '\n';
        return os.str();
    }

    namespace detail
    {
        inline std::vector<std::string> split_csv_line(const std::string &line)
        {
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream is(line);
            while (std::getline(is, cell, ','))
                cells.push_back(cell);
            if (!line.empty() && line.back() == ',')
                cells.emplace_back();
            return cells;
        }
    }

    inline std::vector<ResultRow> results_from_csv(const std::string &text)
    {
        std::istringstream is(text);
        std::string line;
        if (!std::getline(is, line) || line != results_csv_header)
            throw ConfigError("results CSV header mismatch");
        std::vector<ResultRow> rows;
        while (std::getline(is, line))
        {
            if (line.empty())
                continue;
            const auto c = detail::split_csv_line(line);
            if (c.size() != 7)
                throw ConfigError("results CSV row has " + std::to_string(c.size()) + " columns: " + line);
            rows.push_back({c[0], parse_number(c[1]), std::size_t(parse_number(c[2])), parse_number(c[3]),
                            parse_number(c[4]), parse_number(c[5]), parse_number(c[6])});
        }
        return rows;
    }

    // Stacks several results tables, tagging each row with its source label
    inline std::string compare_results(const std::vector<std::pair<std::string, std::vector<ResultRow>>> &tables)
    {
        std::ostringstream os;
        os << "source," << results_csv_header << '\n';
        for (const auto &[label, rows] : tables)
            for (const auto &r : rows)
                os << label << ',' << r.scheme << ',' << format_number(r.snr_db) << ',' << r.n_trials << ','
                   << format_number(r.mean_rate) << ',' << format_number(r.mean_norm_gain) << ','
                   << format_number(r.mean_eff_rate) << ',' << format_number(r.mean_probes) << '\n';
        return os.str();
    }

    // ---- experiment config files ----

    // Overlays an experiment config JSON object. Recognised keys:
    //   preset ("full" | "desk"; applied first), system (object, see apply_json(SystemConfig)),
    //   schemes, snr_db (numbers or "inf"), n_trials, seed, D, K, L, coarsening, total_slots,
    //   predictor {kind, command}, output, threads,
    //   probe_type, n_samples, train_snr_db (number or null), split
    inline void apply_experiment_json(const nlohmann::json &j, ExperimentConfig &cfg)
    {
        using namespace detail;
        reject_unknown_keys(j,
                            {"preset", "system", "schemes", "snr_db", "n_trials", "seed", "D", "K", "L", "coarsening",
                             "total_slots", "predictor", "output", "threads", "probe_type", "n_samples",
                             "train_snr_db", "split"},
                            "config");
        if (j.contains("preset"))
        {
            const auto p = j["preset"].get<std::string>();
            if (p == "full")
                cfg.system = full_scale_config();
            else if (p == "desk")
                cfg.system = desk_scale_config();
            else
                throw ConfigError("unknown preset '" + p + "'");
        }
        if (j.contains("system"))
            apply_json(j["system"], cfg.system);
        if (j.contains("schemes"))
        {
            cfg.schemes.clear();
            for (const auto &s : j["schemes"])
                cfg.schemes.push_back(scheme_from_string(s.get<std::string>()));
        }
        if (j.contains("snr_db"))
        {
            cfg.snr_db.clear();
            for (const auto &s : j["snr_db"])
                cfg.snr_db.push_back(s.is_string() ? parse_number(s.get<std::string>()) : s.get<double>());
        }
        read_if(j, "n_trials", cfg.n_trials);
        read_if(j, "seed", cfg.seed);
        read_if(j, "D", cfg.params.interval);
        read_if(j, "K", cfg.params.top_k);
        read_if(j, "L", cfg.params.top_l);
        read_if(j, "coarsening", cfg.params.coarsening);
        read_if(j, "total_slots", cfg.params.total_slots);
        if (j.contains("predictor"))
        {
            reject_unknown_keys(j["predictor"], {"kind", "command"}, "config.predictor");
            read_if(j["predictor"], "kind", cfg.predictor.kind);
            read_if(j["predictor"], "command", cfg.predictor.command);
        }
        read_if(j, "output", cfg.output);
        read_if(j, "threads", cfg.threads);
        if (j.contains("probe_type"))
            cfg.probe_type = probe_kind_from_string(j["probe_type"].get<std::string>());
        read_if(j, "n_samples", cfg.n_samples);
        if (j.contains("train_snr_db"))
            cfg.train_snr_db = j["train_snr_db"].is_null() ? std::nullopt : std::optional<double>(j["train_snr_db"].get<double>());
        if (j.contains("split"))
            cfg.split_fraction = j["split"].get<double>();
    }
}

#endif
