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

#include <xlris/xlris.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{
    struct CommonOptions
    {
        std::string preset = "desk";
        std::string config_file;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> threads;
        std::optional<std::string> phase_mode;
    };

    void add_common(CLI::App *cmd, CommonOptions &o)
    {
        cmd->add_option("--preset", o.preset, "System preset")->check(CLI::IsMember({"full", "desk"}));
        cmd->add_option("--config", o.config_file, "JSON config file; its keys override flags")
            ->check(CLI::ExistingFile);
        cmd->add_option("--seed", o.seed, "Base RNG seed");
        cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
        cmd->add_option("--phase-mode", o.phase_mode, "Near-field phase constant")
            ->check(CLI::IsMember({"physical", "spacing_scaled"}));
    }

    nlohmann::json load_json_file(const std::string &path)
    {
        try
        {
            return nlohmann::json::parse(xlris::read_file(path));
        }
        catch (const nlohmann::json::exception &e)
        {
            throw xlris::ConfigError(path + ": " + e.what());
        }
    }

    // preset -> flags -> --config file -> XLRIS_SEED
    template <typename ApplyFlags>
    xlris::ExperimentConfig resolve(const CommonOptions &o, ApplyFlags &&apply_flags)
    {
        xlris::ExperimentConfig cfg;
        cfg.system = o.preset == "full" ? xlris::full_scale_config() : xlris::desk_scale_config();
        if (o.seed)
            cfg.seed = *o.seed;
        if (o.threads)
            cfg.threads = *o.threads;
        if (o.phase_mode)
            cfg.system.phase_mode = xlris::phase_mode_from_string(*o.phase_mode);
        apply_flags(cfg);
        if (!o.config_file.empty())
        {
            try
            {
                xlris::apply_experiment_json(load_json_file(o.config_file), cfg);
            }
            catch (const nlohmann::json::exception &e)
            {
                throw xlris::ConfigError(o.config_file + ": " + e.what());
            }
        }
        if (const char *env = std::getenv("XLRIS_SEED"); env && *env)
        {
            try
            {
                std::size_t pos = 0;
                cfg.seed = std::stoull(env, &pos, 0);
                if (env[pos] != '\0')
                    throw std::invalid_argument(env);
            }
            catch (const std::exception &)
            {
                throw xlris::ConfigError(std::string("XLRIS_SEED is not an unsigned integer: ") + env);
            }
        }
        return cfg;
    }

    std::optional<double> parse_snr_or_none(const std::string &s)
    {
        if (s == "none" || s == "noiseless")
            return std::nullopt;
        const double v = xlris::parse_number(s);
        if (std::isinf(v) && v > 0)
            return std::nullopt;
        return v;
    }

    void print_manifest_summary(std::ostream &os, const xlris::DatasetManifest &m, const std::string &where)
    {
        os << where << ": " << m.n_samples << " samples, probe_type=" << xlris::to_string(m.probe_type)
           << ", Q=" << m.q << ", S_x=" << m.s_x << ", S_y=" << m.s_y;
        if (m.interval)
            os << ", D=" << *m.interval;
        os << ", snr_db=" << (m.snr_db ? xlris::format_number(*m.snr_db) : std::string("none")) << ", seed=" << m.seed
           << '\n';
    }

    void write_text_or_stdout(const std::string &path, const std::string &text)
    {
        if (path.empty() || path == "-")
            std::cout << text;
        else
            xlris::write_file_atomic(path, text);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Near-field beam training simulator for XL-RIS links"};
    app.require_subcommand(1);

    // generate
    CommonOptions gen_common;
    std::optional<std::string> gen_probe, gen_snr;
    std::optional<std::size_t> gen_interval, gen_n;
    std::optional<double> gen_split;
    std::string gen_out;
    auto *gen = app.add_subcommand("generate", "Generate a training dataset");
    add_common(gen, gen_common);
    gen->add_option("--probe-type", gen_probe, "far_field or near_subsampled")
        ->check(CLI::IsMember({"far_field", "near_subsampled", "far", "near"}));
    gen->add_option("-D,--interval", gen_interval, "Near-field sampling interval");
    gen->add_option("--snr-db", gen_snr, "Feature SNR in dB, or 'inf' for noiseless");
    gen->add_option("-n,--n-samples", gen_n, "Number of samples");
    gen->add_option("--split", gen_split, "Train fraction; writes train/ and eval/ subdirectories");
    gen->add_option("-o,--out", gen_out, "Output directory");

    // evaluate
    CommonOptions ev_common;
    std::vector<std::string> ev_schemes, ev_snrs;
    std::optional<std::size_t> ev_trials, ev_d, ev_k, ev_l, ev_c;
    std::optional<double> ev_tot;
    std::optional<std::string> ev_pred, ev_cmd;
    std::string ev_out;
    auto *ev = app.add_subcommand("evaluate", "Monte-Carlo evaluation of beam training schemes");
    add_common(ev, ev_common);
    ev->add_option("--schemes", ev_schemes, "exhaustive hierarchical fbt pnbt improved_pnbt")->delimiter(',');
    ev->add_option("--snr-db", ev_snrs, "Transmit SNR list in dB ('inf' allowed)")->delimiter(',');
    ev->add_option("--n-trials", ev_trials, "Trials per SNR");
    ev->add_option("-D,--interval", ev_d, "PNBT sampling interval");
    ev->add_option("-K,--top-k", ev_k, "x-axis candidates for improved PNBT");
    ev->add_option("-L,--top-l", ev_l, "y-axis candidates for improved PNBT");
    ev->add_option("--coarsening", ev_c, "Hierarchical cell size");
    ev->add_option("--total-slots", ev_tot, "Slots per coherence interval");
    ev->add_option("--predictor", ev_pred, "oracle, uniform or external")
        ->check(CLI::IsMember({"oracle", "uniform", "external"}));
    ev->add_option("--predictor-cmd", ev_cmd, "External predictor command (implies --predictor external)");
    ev->add_option("-o,--out", ev_out, "Results CSV (stdout if omitted)");

    // compare
    std::vector<std::string> cmp_files;
    std::string cmp_out;
    auto *cmp = app.add_subcommand("compare", "Join results CSVs into one table");
    cmp->add_option("files", cmp_files, "Results CSVs")->required()->check(CLI::ExistingFile);
    cmp->add_option("-o,--out", cmp_out, "Output CSV (stdout if omitted)");

    // inspect
    std::string ins_dir;
    auto *ins = app.add_subcommand("inspect", "Print a dataset manifest");
    ins->add_option("dir", ins_dir, "Dataset directory")->required()->check(CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*gen)
        {
            auto cfg = resolve(gen_common,
                               [&](xlris::ExperimentConfig &c)
                               {
                                   if (gen_probe)
                                       c.probe_type = xlris::probe_kind_from_string(*gen_probe);
                                   if (gen_interval)
                                       c.params.interval = *gen_interval;
                                   if (gen_snr)
                                       c.train_snr_db = parse_snr_or_none(*gen_snr);
                                   if (gen_n)
                                       c.n_samples = *gen_n;
                                   if (gen_split)
                                       c.split_fraction = *gen_split;
                                   if (!gen_out.empty())
                                       c.output = gen_out;
                               });
            if (cfg.output.empty())
                throw xlris::ConfigError("generate needs an output directory (--out)");
            const auto manifest = xlris::make_manifest(cfg.system, cfg.probe_type, cfg.params.interval,
                                                       cfg.train_snr_db, cfg.n_samples, cfg.seed);
            const auto ds = xlris::generate_dataset(manifest, cfg.threads);
            const xlris::fs::path out = cfg.output;
            if (cfg.split_fraction)
            {
                const auto [train, eval] = xlris::split(ds, *cfg.split_fraction, cfg.seed);
                xlris::write_dataset(train, out / "train");
                xlris::write_dataset(eval, out / "eval");
                print_manifest_summary(std::cout, train.manifest, (out / "train").string());
                print_manifest_summary(std::cout, eval.manifest, (out / "eval").string());
            }
            else
            {
                xlris::write_dataset(ds, out);
                print_manifest_summary(std::cout, ds.manifest, out.string());
            }
        }
        else if (*ev)
        {
            auto cfg = resolve(ev_common,
                               [&](xlris::ExperimentConfig &c)
                               {
                                   if (!ev_schemes.empty())
                                   {
                                       c.schemes.clear();
                                       for (const auto &s : ev_schemes)
                                           c.schemes.push_back(xlris::scheme_from_string(s));
                                   }
                                   if (!ev_snrs.empty())
                                   {
                                       c.snr_db.clear();
                                       for (const auto &s : ev_snrs)
                                           c.snr_db.push_back(xlris::parse_number(s));
                                   }
                                   if (ev_trials)
                                       c.n_trials = *ev_trials;
                                   if (ev_d)
                                       c.params.interval = *ev_d;
                                   if (ev_k)
                                       c.params.top_k = *ev_k;
                                   if (ev_l)
                                       c.params.top_l = *ev_l;
                                   if (ev_c)
                                       c.params.coarsening = *ev_c;
                                   if (ev_tot)
                                       c.params.total_slots = *ev_tot;
                                   if (ev_pred)
                                       c.predictor.kind = *ev_pred;
                                   if (ev_cmd)
                                   {
                                       c.predictor.kind = "external";
                                       c.predictor.command = *ev_cmd;
                                   }
                                   if (!ev_out.empty())
                                       c.output = ev_out;
                               });
            const auto rows = xlris::run_evaluate(cfg);
            write_text_or_stdout(cfg.output, xlris::results_to_csv(rows));
        }
        else if (*cmp)
        {
            std::vector<std::pair<std::string, std::vector<xlris::ResultRow>>> tables;
            for (const auto &f : cmp_files)
                tables.emplace_back(xlris::fs::path(f).stem().string(), xlris::results_from_csv(xlris::read_file(f)));
            write_text_or_stdout(cmp_out, xlris::compare_results(tables));
        }
        else if (*ins)
        {
            const auto m = xlris::read_manifest(ins_dir);
            std::cout << xlris::manifest_to_json(m).dump(2) << '\n';
        }
    }
    catch (const xlris::PredictorContractError &e)
    {
        std::cerr << "xlris: predictor contract violation: " << e.what() << '\n';
        return 3;
    }
    catch (const xlris::ConfigError &e)
    {
        std::cerr << "xlris: config error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "xlris: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
