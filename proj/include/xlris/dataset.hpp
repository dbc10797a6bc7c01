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

#ifndef XLRIS_DATASET_HPP
#define XLRIS_DATASET_HPP

#include "channel.hpp"
#include "codebook.hpp"
#include "config.hpp"
#include "config_json.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "schemes.hpp"
#include "tensor_io.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Labeled probe datasets.
//
// Directory layout:
//   manifest.json  UTF-8, fixed key order (see manifest_to_json)
//   features.bin   n x Q x 2 float32 LE, row-major, (re, im) interleaved per entry
//   labels.bin     n x 2 uint32 LE, (s_x, s_y), 1-based
//
// Sample i is generated from Rng::derived(seed, i): channel draw first, then one noise draw
// per probe slot in probe order. Labels are the noiseless strongest-path optimum.

namespace xlris
{
    inline constexpr int dataset_format_version = 1;

    enum class ProbeKind
    {
        far_field,
        near_subsampled,
    };

    inline std::string_view to_string(ProbeKind k) { return k == ProbeKind::far_field ? "far_field" : "near_subsampled"; }

    inline ProbeKind probe_kind_from_string(std::string_view s)
    {
        if (s == "far_field" || s == "far")
            return ProbeKind::far_field;
        if (s == "near_subsampled" || s == "near")
            return ProbeKind::near_subsampled;
        throw ConfigError("unknown probe type '" + std::string(s) + "'");
    }

    struct DatasetManifest
    {
        int version = dataset_format_version;
        std::uint64_t seed = 0;
        ProbeKind probe_type = ProbeKind::near_subsampled;
        std::size_t q = 0;
        std::size_t s_x = 0, s_y = 0;
        std::optional<std::size_t> interval;   // D, near_subsampled only
        std::optional<double> snr_db;          // absent = noiseless features
        std::size_t n_samples = 0;
        SystemConfig system;
        std::vector<std::uint32_t> source_indices; // set only for subsets produced by split()

        std::size_t expected_q() const
        {
            if (probe_type == ProbeKind::far_field)
                return system.ris_rows * system.ris_cols;
            if (!interval || *interval < 1)
                throw ConfigError("near_subsampled datasets need a sampling interval D >= 1");
            return system.grid.size() / *interval;
        }

        void validate() const
        {
            system.validate();
            if (version != dataset_format_version)
                throw ConfigError("unsupported dataset version " + std::to_string(version));
            if (q != expected_q())
                throw ConfigError("manifest Q=" + std::to_string(q) + " is inconsistent with the probe type (expected " +
                                  std::to_string(expected_q()) + ")");
            if (s_x != system.grid.s_x || s_y != system.grid.s_y)
                throw ConfigError("manifest S_x/S_y disagree with the grid");
            if (!source_indices.empty() && source_indices.size() != n_samples)
                throw ConfigError("source_indices length does not match n_samples");
        }

        // Original generation index of stored row i
        std::uint64_t sample_id(std::size_t i) const { return source_indices.empty() ? i : source_indices.at(i); }
    };

    inline DatasetManifest make_manifest(const SystemConfig &system, ProbeKind probe, std::optional<std::size_t> interval,
                                         std::optional<double> snr_db, std::size_t n_samples, std::uint64_t seed)
    {
        DatasetManifest m;
        m.seed = seed;
        m.probe_type = probe;
        m.interval = probe == ProbeKind::near_subsampled ? interval : std::nullopt;
        m.snr_db = snr_db;
        m.n_samples = n_samples;
        m.system = system;
        m.s_x = system.grid.s_x;
        m.s_y = system.grid.s_y;
        m.q = m.expected_q();
        m.validate();
        return m;
    }

    inline ordered_json manifest_to_json(const DatasetManifest &m)
    {
        ordered_json j;
        j["version"] = m.version;
        j["seed"] = m.seed;
        j["probe_type"] = std::string(to_string(m.probe_type));
        j["Q"] = m.q;
        j["S_x"] = m.s_x;
        j["S_y"] = m.s_y;
        j["D"] = m.interval ? ordered_json(*m.interval) : ordered_json(nullptr);
        j["snr_db"] = m.snr_db ? ordered_json(*m.snr_db) : ordered_json(nullptr);
        j["n_samples"] = m.n_samples;
        j["phase_mode"] = std::string(to_string(m.system.phase_mode));
        j["rng"] = {{"generator", rng_generator_name}, {"seed_mixer", rng_mixer_name}, {"stream", "per-sample index"}};
        j["features"] = {{"file", "features.bin"},
                         {"dtype", "float32le"},
                         {"shape", {m.n_samples, m.q, 2}},
                         {"layout", "row-major, real then imaginary"}};
        j["labels"] = {{"file", "labels.bin"}, {"dtype", "uint32le"}, {"shape", {m.n_samples, 2}}, {"base", 1}};
        j["system"] = to_json(m.system);
        if (!m.source_indices.empty())
            j["source_indices"] = m.source_indices;
        return j;
    }

    inline DatasetManifest manifest_from_json(const nlohmann::json &j)
    {
        DatasetManifest m;
        try
        {
            m.version = j.at("version").get<int>();
            m.seed = j.at("seed").get<std::uint64_t>();
            m.probe_type = probe_kind_from_string(j.at("probe_type").get<std::string>());
            m.q = j.at("Q").get<std::size_t>();
            m.s_x = j.at("S_x").get<std::size_t>();
            m.s_y = j.at("S_y").get<std::size_t>();
            if (!j.at("D").is_null())
                m.interval = j.at("D").get<std::size_t>();
            if (!j.at("snr_db").is_null())
                m.snr_db = j.at("snr_db").get<double>();
            m.n_samples = j.at("n_samples").get<std::size_t>();
            m.system = system_config_from_json(j.at("system"));
            if (j.contains("source_indices"))
                m.source_indices = j.at("source_indices").get<std::vector<std::uint32_t>>();
        }
        catch (const nlohmann::json::exception &e)
        {
            throw IoError(std::string("malformed dataset manifest: ") + e.what());
        }
        m.validate();
        return m;
    }

    struct Dataset
    {
        DatasetManifest manifest;
        std::vector<float> features;       // n * Q * 2
        std::vector<std::uint32_t> labels; // n * 2

        std::size_t size() const { return manifest.n_samples; }

        std::span<const float> feature_row(std::size_t i) const
        {
            const std::size_t w = manifest.q * 2;
            return std::span<const float>(features).subspan(i * w, w);
        }

        IndexPair label(std::size_t i) const { return {labels.at(2 * i), labels.at(2 * i + 1)}; }
    };

    // Probe codewords and their order for a manifest
    struct ProbePlan
    {
        std::optional<FarFieldCodebook> far;
        NearFieldCodebook near;
        ProbeSet probes;
    };

    inline ProbePlan make_probe_plan(const DatasetManifest &m)
    {
        ProbePlan plan;
        plan.near = build_near_field_codebook(m.system);
        if (m.probe_type == ProbeKind::far_field)
            plan.far = build_far_field_codebook(m.system.ris());
        else
            plan.probes = subsample(plan.near.size(), *m.interval);
        return plan;
    }

    // Channel of the sample generated with index `id`; `rng` is left positioned for the probes
    inline ChannelRealization regenerate_channel(const DatasetManifest &m, std::uint64_t id, Rng &rng)
    {
        rng = Rng::derived(m.seed, id);
        return sample_channel(m.system, rng);
    }

    inline Dataset generate_dataset(const DatasetManifest &manifest, std::size_t max_threads = 0)
    {
        manifest.validate();
        const ProbePlan plan = make_probe_plan(manifest);
        const NoiseModel noise = manifest.snr_db ? NoiseModel::from_snr_db(*manifest.snr_db) : NoiseModel::noiseless();
        const std::size_t n = manifest.n_samples, q = manifest.q;

        Dataset ds;
        ds.manifest = manifest;
        ds.features.resize(n * q * 2);
        ds.labels.resize(n * 2);
        parallel_for(
            n,
            [&](std::size_t i)
            {
                Rng rng(0);
                const auto chan = regenerate_channel(manifest, manifest.sample_id(i), rng);
                const std::size_t s = true_optimal(plan.near, chan);
                const auto [sx, sy] = index_pair(s, manifest.s_x, manifest.s_y);
                const auto y = plan.far ? probe_far_field(*plan.far, chan, noise, rng)
                                        : probe_subset(plan.near, plan.probes, chan, noise, rng);
                float *row = ds.features.data() + i * q * 2;
                for (std::size_t k = 0; k < q; ++k)
                {
                    row[2 * k] = float(y[k].real());
                    row[2 * k + 1] = float(y[k].imag());
                }
                ds.labels[2 * i] = std::uint32_t(sx);
                ds.labels[2 * i + 1] = std::uint32_t(sy);
            },
            max_threads);
        return ds;
    }

    inline void write_dataset(const Dataset &ds, const fs::path &dir)
    {
        ds.manifest.validate();
        if (ds.features.size() != ds.size() * ds.manifest.q * 2 || ds.labels.size() != ds.size() * 2)
            throw IoError("dataset buffers do not match the manifest shape");
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create " + dir.string() + ": " + ec.message());
        write_tensor<float>(dir / "features.bin", ds.features);
        write_tensor<std::uint32_t>(dir / "labels.bin", ds.labels);
        write_file_atomic(dir / "manifest.json", manifest_to_json(ds.manifest).dump(2) + "\n");
    }

    inline DatasetManifest read_manifest(const fs::path &dir)
    {
        const std::string text = read_file(dir / "manifest.json");
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw IoError((dir / "manifest.json").string() + ": " + e.what());
        }
        return manifest_from_json(j);
    }

    inline Dataset read_dataset(const fs::path &dir)
    {
        Dataset ds;
        ds.manifest = read_manifest(dir);
        ds.features = read_tensor<float>(dir / "features.bin", ds.size() * ds.manifest.q * 2);
        ds.labels = read_tensor<std::uint32_t>(dir / "labels.bin", ds.size() * 2);
        for (std::size_t i = 0; i < ds.size(); ++i)
        {
            const auto [sx, sy] = ds.label(i);
            if (sx < 1 || sx > ds.manifest.s_x || sy < 1 || sy > ds.manifest.s_y)
                throw IoError("label out of range in row " + std::to_string(i));
        }
        return ds;
    }

    // Rows `rows` of `ds`, in that order
    inline Dataset subset(const Dataset &ds, std::span<const std::size_t> rows)
    {
        Dataset out;
        out.manifest = ds.manifest;
        out.manifest.n_samples = rows.size();
        out.manifest.source_indices.clear();
        const std::size_t w = ds.manifest.q * 2;
        out.features.reserve(rows.size() * w);
        out.labels.reserve(rows.size() * 2);
        for (std::size_t r : rows)
        {
            const auto f = ds.feature_row(r);
            out.features.insert(out.features.end(), f.begin(), f.end());
            out.labels.push_back(ds.labels.at(2 * r));
            out.labels.push_back(ds.labels.at(2 * r + 1));
            out.manifest.source_indices.push_back(std::uint32_t(ds.manifest.sample_id(r)));
        }
        return out;
    }

    // Seeded Fisher-Yates shuffle, then the first floor(n f) rows train and the rest evaluate
    inline std::pair<Dataset, Dataset> split(const Dataset &ds, double train_fraction, std::uint64_t seed)
    {
        if (!(train_fraction > 0.0 && train_fraction < 1.0))
            throw DomainError("split: train fraction must lie in (0, 1)");
        const std::size_t n = ds.size();
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i)
            order[i] = i;
        Rng rng = Rng::derived(seed, 0x53504C4954ULL); // "SPLIT"
        for (std::size_t i = n; i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);
        const auto n_train = std::size_t(std::floor(double(n) * train_fraction));
        const std::span<const std::size_t> all(order);
        return {subset(ds, all.first(n_train)), subset(ds, all.subspan(n_train))};
    }
}

#endif
