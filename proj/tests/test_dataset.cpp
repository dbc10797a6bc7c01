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

#include "oracles.hpp"

#include <xlris/dataset.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace xlris;

namespace
{
    fs::path scratch(const std::string &name)
    {
        const auto p = fs::temp_directory_path() / ("xlris-test-" + name);
        fs::remove_all(p);
        return p;
    }

    DatasetManifest desk_manifest(std::size_t n, std::optional<double> snr = 10.0, std::uint64_t seed = 1)
    {
        return make_manifest(desk_scale_config(), ProbeKind::near_subsampled, 8, snr, n, seed);
    }
}

TEST(Manifest, QConsistency)
{
    const auto m = desk_manifest(10);
    EXPECT_EQ(m.q, 30u);
    const auto f = make_manifest(desk_scale_config(), ProbeKind::far_field, 8, std::nullopt, 10, 1);
    EXPECT_EQ(f.q, 64u);
    EXPECT_FALSE(f.interval.has_value());
    auto bad = m;
    bad.q = 31;
    EXPECT_THROW(bad.validate(), ConfigError);
    EXPECT_THROW(make_manifest(desk_scale_config(), ProbeKind::near_subsampled, std::nullopt, 1.0, 1, 1), ConfigError);
    const auto full = make_manifest(full_scale_config(), ProbeKind::far_field, std::nullopt, 10.0, 0, 1);
    EXPECT_EQ(full.q, 512u);
}

TEST(Manifest, JsonKeyOrderAndRoundtrip)
{
    auto m = desk_manifest(5);
    const auto j = manifest_to_json(m);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    const std::vector<std::string> expect{"version",  "seed",      "probe_type", "Q",   "S_x",      "S_y",
                                          "D",        "snr_db",    "n_samples",  "phase_mode", "rng", "features",
                                          "labels",   "system"};
    EXPECT_EQ(keys, expect);
    const auto back = manifest_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(manifest_to_json(back).dump(), j.dump());
}

TEST(Manifest, RejectsMalformed)
{
    auto j = nlohmann::json::parse(manifest_to_json(desk_manifest(5)).dump());
    j.erase("Q");
    EXPECT_THROW(manifest_from_json(j), IoError);
    auto k = nlohmann::json::parse(manifest_to_json(desk_manifest(5)).dump());
    k["system"]["bogus"] = 1;
    EXPECT_THROW(manifest_from_json(k), ConfigError);
}

TEST(Dataset, EmptyDatasetIsValid)
{
    const auto dir = scratch("empty");
    const auto ds = generate_dataset(desk_manifest(0));
    EXPECT_EQ(ds.size(), 0u);
    write_dataset(ds, dir);
    EXPECT_TRUE(fs::exists(dir / "manifest.json"));
    EXPECT_EQ(fs::file_size(dir / "features.bin"), 0u);
    EXPECT_EQ(read_dataset(dir).size(), 0u);
    fs::remove_all(dir);
}

TEST(Dataset, RoundtripIsBitExact)
{
    const auto dir = scratch("roundtrip");
    const auto ds = generate_dataset(desk_manifest(200));
    write_dataset(ds, dir);
    EXPECT_EQ(fs::file_size(dir / "features.bin"), 200u * 30 * 2 * 4);
    EXPECT_EQ(fs::file_size(dir / "labels.bin"), 200u * 2 * 4);
    const auto back = read_dataset(dir);
    ASSERT_EQ(back.features.size(), ds.features.size());
    EXPECT_EQ(std::memcmp(back.features.data(), ds.features.data(), ds.features.size() * sizeof(float)), 0);
    EXPECT_EQ(back.labels, ds.labels);
    fs::remove_all(dir);
}

TEST(Dataset, LittleEndianLayout)
{
    const auto dir = scratch("layout");
    const auto ds = generate_dataset(desk_manifest(3));
    write_dataset(ds, dir);
    const auto bytes = read_file(dir / "labels.bin");
    ASSERT_EQ(bytes.size(), 24u);
    const std::uint32_t first = std::uint32_t(std::uint8_t(bytes[0])) | std::uint32_t(std::uint8_t(bytes[1])) << 8 |
                                std::uint32_t(std::uint8_t(bytes[2])) << 16 |
                                std::uint32_t(std::uint8_t(bytes[3])) << 24;
    EXPECT_EQ(first, ds.labels[0]);
    fs::remove_all(dir);
}

TEST(Dataset, DeterministicFiles)
{
    const auto a = scratch("det-a"), b = scratch("det-b");
    write_dataset(generate_dataset(desk_manifest(100), 4), a);
    write_dataset(generate_dataset(desk_manifest(100), 1), b);
    for (const char *f : {"manifest.json", "features.bin", "labels.bin"})
        EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Dataset, SampleContentIndependentOfOrder)
{
    const auto full = generate_dataset(desk_manifest(50));
    // Regenerating a subset by source index reproduces the same rows
    auto m = desk_manifest(5);
    m.source_indices = {49, 3, 17, 0, 22};
    const auto part = generate_dataset(m);
    for (std::size_t i = 0; i < 5; ++i)
    {
        const auto src = m.source_indices[i];
        const auto a = part.feature_row(i), b = full.feature_row(src);
        EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
        EXPECT_EQ(part.label(i).s_x, full.label(src).s_x);
        EXPECT_EQ(part.label(i).s_y, full.label(src).s_y);
    }
}

TEST(Dataset, LabelsMatchBruteForceOracle)
{
    const auto m = desk_manifest(100);
    const auto ds = generate_dataset(m);
    const auto &cfg = m.system;
    const oracle::Panel panel{cfg.ris_rows, cfg.ris_cols, cfg.wavelength(), cfg.wavelength() / 2};
    const oracle::Grid grid{cfg.grid.s_x,     cfg.grid.s_y,  cfg.grid.delta_x, cfg.grid.delta_y,
                            cfg.grid.x_min,   cfg.grid.y_min, cfg.user_height};
    for (std::size_t i = 0; i < ds.size(); ++i)
    {
        Rng rng(0);
        const auto chan = regenerate_channel(m, m.sample_id(i), rng);
        const auto u = chan.user_position;
        const auto s = oracle::best_grid_index(panel, grid, {u.x, u.y, u.z});
        const auto [sx, sy] = ds.label(i);
        EXPECT_EQ((sy - 1) * cfg.grid.s_x + sx, s);
    }
}

TEST(Dataset, NoiselessFeaturesMatchProbes)
{
    const auto m = desk_manifest(5, std::nullopt);
    const auto ds = generate_dataset(m);
    const auto plan = make_probe_plan(m);
    for (std::size_t i = 0; i < ds.size(); ++i)
    {
        Rng rng(0);
        const auto chan = regenerate_channel(m, i, rng);
        for (std::size_t k = 0; k < m.q; ++k)
        {
            const cplx y = noiseless_response(plan.near.codeword(plan.probes.flat_indices[k]), chan);
            EXPECT_EQ(ds.feature_row(i)[2 * k], float(y.real()));
            EXPECT_EQ(ds.feature_row(i)[2 * k + 1], float(y.imag()));
        }
    }
}

TEST(Dataset, LabelCoverageFloor)
{
    // 2000 desk samples covered 231 of the 240 classes when frozen
    const auto ds = generate_dataset(desk_manifest(2000));
    std::set<std::pair<std::size_t, std::size_t>> classes;
    for (std::size_t i = 0; i < ds.size(); ++i)
        classes.insert({ds.label(i).s_x, ds.label(i).s_y});
    EXPECT_GE(classes.size(), 231u);
    EXPECT_GT(classes.size(), 120u);
}

TEST(Dataset, FarFieldProbeDataset)
{
    const auto m = make_manifest(desk_scale_config(), ProbeKind::far_field, std::nullopt, 0.0, 4, 3);
    const auto ds = generate_dataset(m);
    EXPECT_EQ(ds.features.size(), 4u * 64 * 2);
}

TEST(Dataset, RejectsCorruptFiles)
{
    const auto dir = scratch("corrupt");
    write_dataset(generate_dataset(desk_manifest(4)), dir);
    // Truncated features
    auto f = read_file(dir / "features.bin");
    write_file_atomic(dir / "features.bin", std::string_view(f).substr(0, f.size() - 4));
    EXPECT_THROW(read_dataset(dir), IoError);
    write_file_atomic(dir / "features.bin", f);
    // Out-of-range label
    std::vector<std::uint32_t> labels(8, 1);
    labels[3] = 99;
    write_tensor<std::uint32_t>(dir / "labels.bin", labels);
    EXPECT_THROW(read_dataset(dir), IoError);
    fs::remove_all(dir);
}

TEST(Split, SizesAndPartition)
{
    const auto ds = generate_dataset(desk_manifest(10));
    const auto [train, eval] = split(ds, 0.5, 7);
    EXPECT_EQ(train.size(), 5u);
    EXPECT_EQ(eval.size(), 5u);
    std::set<std::uint32_t> all;
    for (auto i : train.manifest.source_indices)
        all.insert(i);
    for (auto i : eval.manifest.source_indices)
        EXPECT_TRUE(all.insert(i).second);
    EXPECT_EQ(all.size(), 10u);
    EXPECT_THROW(split(ds, 0.0, 1), DomainError);
    EXPECT_THROW(split(ds, 1.0, 1), DomainError);
}

TEST(Split, DeterministicAndRowsFollowSource)
{
    const auto ds = generate_dataset(desk_manifest(40));
    const auto [a1, b1] = split(ds, 0.9, 3);
    const auto [a2, b2] = split(ds, 0.9, 3);
    EXPECT_EQ(a1.manifest.source_indices, a2.manifest.source_indices);
    EXPECT_EQ(a1.size(), 36u);
    EXPECT_EQ(b1.size(), 4u);
    for (std::size_t i = 0; i < b1.size(); ++i)
    {
        const auto src = b1.manifest.sample_id(i);
        const auto x = b1.feature_row(i), y = ds.feature_row(src);
        EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin()));
        EXPECT_EQ(b1.label(i).s_x, ds.label(src).s_x);
    }
    // Split subsets roundtrip through disk with their provenance
    const auto dir = scratch("split");
    write_dataset(b1, dir);
    const auto back = read_dataset(dir);
    EXPECT_EQ(back.manifest.source_indices, b1.manifest.source_indices);
    EXPECT_EQ(back.features, b1.features);
    fs::remove_all(dir);
}

TEST(Split, TwentyThousandSamples)
{
    Dataset ds;
    ds.manifest = desk_manifest(20000);
    ds.features.assign(20000u * 30 * 2, 0.0f);
    ds.labels.assign(40000u, 1u);
    const auto [train, eval] = split(ds, 0.9, 1);
    EXPECT_EQ(train.size(), 18000u);
    EXPECT_EQ(eval.size(), 2000u);
}
