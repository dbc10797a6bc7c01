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

#include <xlris/codebook.hpp>
#include <xlris/codebook_io.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace xlris;

namespace
{
    const double lambda30 = speed_of_light / 30e9;

    double worst_modulus_error(const CodewordMatrix &m)
    {
        const double expect = 1.0 / std::sqrt(double(m.length()));
        double worst = 0.0;
        for (const auto &e : m.data())
            worst = std::max(worst, std::abs(std::abs(e) - expect));
        return worst;
    }
}

TEST(FarFieldCodebook, DftGrid)
{
    EXPECT_EQ(dft_grid(2), (std::vector<double>{-0.5, 0.5}));
    const auto g3 = dft_grid(3);
    EXPECT_DOUBLE_EQ(g3[1], 0.0);
    for (std::size_t n : {4u, 7u, 16u})
    {
        const auto g = dft_grid(n);
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_NEAR(g[i], -g[n - 1 - i], 1e-15);
    }
}

TEST(FarFieldCodebook, SingleElement)
{
    const auto cb = build_far_field_codebook(ArrayGeometry(1, 1, lambda30));
    ASSERT_EQ(cb.size(), 1u);
    EXPECT_NEAR(std::abs(cb.codewords.row(0)[0] - cplx(1.0, 0.0)), 0.0, 1e-15);
}

TEST(FarFieldCodebook, ThetaMajorConjugatedSteering)
{
    const ArrayGeometry g(4, 8, lambda30);
    const auto cb = build_far_field_codebook(g);
    ASSERT_EQ(cb.size(), 32u);
    EXPECT_LT(worst_modulus_error(cb.codewords), 1e-12);
    for (std::size_t n = 0; n < 4; ++n)
        for (std::size_t m = 0; m < 8; ++m)
        {
            const auto expect = conj(far_field_steering(cb.theta[n], cb.phi[m], g));
            const auto row = cb.codewords.row(n * 8 + m);
            for (std::size_t k = 0; k < expect.size(); ++k)
                EXPECT_EQ(row[k], expect[k]);
        }
}

TEST(FarFieldCodebook, IsOrthonormal)
{
    const ArrayGeometry g(4, 4, lambda30);
    const auto cb = build_far_field_codebook(g);
    for (std::size_t a = 0; a < cb.size(); ++a)
        for (std::size_t b = 0; b < cb.size(); ++b)
        {
            const double ip = std::abs(dot_t(cb.codewords.row(a), conj(cb.codewords.row(b))));
            EXPECT_NEAR(ip, a == b ? 1.0 : 0.0, 1e-12);
        }
}

TEST(FarFieldCodebook, FullScaleCount)
{
    const auto cfg = full_scale_config();
    EXPECT_EQ(build_far_field_codebook(cfg.ris()).size(), 512u);
}

TEST(NearFieldCodebook, FullScaleCount)
{
    const auto cfg = full_scale_config();
    EXPECT_EQ(cfg.grid.size(), 6000u);
}

TEST(NearFieldCodebook, SinglePoint)
{
    const ArrayGeometry g(4, 4, lambda30);
    const GridSpec grid{1, 1, 1.0, 1.0, 3.0, 5.0};
    const Position3D gs{20, 20, 0};
    const auto cb = build_near_field_codebook(grid, g, gs, 0.0);
    ASSERT_EQ(cb.size(), 1u);
    const auto expect = conj(effective_near_field_steering({3.0, 5.0, 0.0}, gs, g));
    for (std::size_t k = 0; k < expect.size(); ++k)
        EXPECT_NEAR(std::abs(cb.codeword(1)[k] - expect[k]), 0.0, 1e-12);
}

TEST(NearFieldCodebook, GridOrderingAndOrigin)
{
    const auto cfg = desk_scale_config();
    const auto cb = build_near_field_codebook(cfg);
    ASSERT_EQ(cb.size(), 240u);
    EXPECT_LT(worst_modulus_error(cb.codewords), 1e-12);
    EXPECT_EQ(cb.point(1), (Position3D{cfg.grid.x_min, cfg.grid.y_min, cfg.user_height}));
    // y-major: s = (s_y - 1) S_x + s_x
    const auto p = cb.point(flat_index(3, 2, 20, 12));
    EXPECT_DOUBLE_EQ(p.x, cfg.grid.x_min + 2 * cfg.grid.delta_x);
    EXPECT_DOUBLE_EQ(p.y, cfg.grid.y_min + 1 * cfg.grid.delta_y);
    const oracle::Panel panel{8, 8, cfg.wavelength(), cfg.wavelength() / 2};
    // Each codeword focuses on its own grid point
    for (std::size_t s = 1; s <= cb.size(); s += 17)
    {
        const auto q = cb.point(s);
        const auto c = effective_near_field_steering(q, cfg.g_scatter, cfg.ris());
        EXPECT_NEAR(std::abs(dot_t(cb.codeword(s), c)), 1.0, 1e-12);
        EXPECT_NEAR(oracle::focus_gain(panel, {q.x, q.y, q.z}, {q.x, q.y, q.z}), 1.0, 1e-12);
    }
    EXPECT_THROW(cb.codeword(0), DomainError);
    EXPECT_THROW(cb.codeword(241), DomainError);
}

TEST(NearFieldCodebook, RejectsBadGrid)
{
    const ArrayGeometry g(2, 2, lambda30);
    EXPECT_THROW(build_near_field_codebook(GridSpec{0, 3, 1, 1, 0, 0}, g, {}, 0.0), DomainError);
    EXPECT_THROW(build_near_field_codebook(GridSpec{2, 3, 0, 1, 0, 0}, g, {}, 0.0), DomainError);
}

TEST(FlatIndex, Examples)
{
    EXPECT_EQ(flat_index(1, 1, 100, 60), 1u);
    EXPECT_EQ(flat_index(100, 60, 100, 60), 6000u);
    EXPECT_EQ(flat_index(3, 2, 20, 12), 23u);
    EXPECT_THROW(flat_index(0, 1, 20, 12), DomainError);
    EXPECT_THROW(flat_index(21, 1, 20, 12), DomainError);
    EXPECT_THROW(flat_index(1, 13, 20, 12), DomainError);
    EXPECT_THROW(index_pair(0, 20, 12), DomainError);
    EXPECT_THROW(index_pair(241, 20, 12), DomainError);
}

TEST(FlatIndex, BijectionAtDeskScale)
{
    std::vector<bool> seen(241, false);
    for (std::size_t sy = 1; sy <= 12; ++sy)
        for (std::size_t sx = 1; sx <= 20; ++sx)
        {
            const auto s = flat_index(sx, sy, 20, 12);
            ASSERT_FALSE(seen[s]);
            seen[s] = true;
            const auto [bx, by] = index_pair(s, 20, 12);
            EXPECT_EQ(bx, sx);
            EXPECT_EQ(by, sy);
        }
    for (std::size_t s = 1; s <= 240; ++s)
    {
        const auto [sx, sy] = index_pair(s, 20, 12);
        EXPECT_EQ(flat_index(sx, sy, 20, 12), s);
    }
}

TEST(Subsample, Examples)
{
    const auto p = subsample(6000, 20);
    ASSERT_EQ(p.size(), 300u);
    EXPECT_EQ(p.flat_indices.front(), 20u);
    EXPECT_EQ(p.flat_indices.back(), 6000u);
    EXPECT_EQ(subsample(10, 3).flat_indices, (std::vector<std::size_t>{3, 6, 9}));
    const auto all = subsample(12, 1);
    ASSERT_EQ(all.size(), 12u);
    for (std::size_t i = 0; i < 12; ++i)
        EXPECT_EQ(all.flat_indices[i], i + 1);
    EXPECT_THROW(subsample(10, 0), DomainError);
}

TEST(Subsample, OversizedIntervalWarnsAndIsEmpty)
{
    std::ostringstream captured;
    auto *old = std::clog.rdbuf(captured.rdbuf());
    const auto p = subsample(10, 11);
    std::clog.rdbuf(old);
    EXPECT_EQ(p.size(), 0u);
    EXPECT_NE(captured.str().find("warning"), std::string::npos);
}

TEST(Subsample, CountAndCongruence)
{
    Rng rng(6);
    for (int i = 0; i < 200; ++i)
    {
        const std::size_t total = 1 + rng.below(5000), d = 1 + rng.below(100);
        const auto p = subsample(total, d);
        EXPECT_EQ(p.size(), total / d);
        for (std::size_t k = 0; k < p.size(); ++k)
        {
            EXPECT_EQ(p.flat_indices[k] % d, 0u);
            EXPECT_LE(p.flat_indices[k], total);
            if (k)
                EXPECT_LT(p.flat_indices[k - 1], p.flat_indices[k]);
            EXPECT_TRUE(p.contains(p.flat_indices[k]));
        }
        if (d > 1 && total >= 1)
            EXPECT_FALSE(p.contains(1));
    }
}

TEST(CodebookIo, NearFieldRoundtripIsExact)
{
    const auto cb = build_near_field_codebook(desk_scale_config());
    const auto dir = fs::temp_directory_path() / "xlris-test-cb-near";
    fs::remove_all(dir);
    save_codebook(cb, dir);
    const auto back = load_near_field_codebook(dir);
    EXPECT_EQ(back.size(), cb.size());
    EXPECT_EQ(back.grid.s_x, cb.grid.s_x);
    EXPECT_EQ(back.grid.x_min, cb.grid.x_min);
    EXPECT_EQ(back.g_scatter, cb.g_scatter);
    EXPECT_EQ(back.phase_mode, cb.phase_mode);
    ASSERT_EQ(back.codewords.data().size(), cb.codewords.data().size());
    for (std::size_t i = 0; i < cb.codewords.data().size(); ++i)
        ASSERT_EQ(back.codewords.data()[i], cb.codewords.data()[i]);
    EXPECT_THROW(load_far_field_codebook(dir), IoError);
    fs::remove_all(dir);
}

TEST(CodebookIo, FarFieldRoundtripIsExact)
{
    const auto cb = build_far_field_codebook(ArrayGeometry(4, 8, lambda30));
    const auto dir = fs::temp_directory_path() / "xlris-test-cb-far";
    fs::remove_all(dir);
    save_codebook(cb, dir);
    const auto back = load_far_field_codebook(dir);
    EXPECT_EQ(back.theta, cb.theta);
    EXPECT_EQ(back.phi, cb.phi);
    for (std::size_t i = 0; i < cb.codewords.data().size(); ++i)
        ASSERT_EQ(back.codewords.data()[i], cb.codewords.data()[i]);
    // Truncated payload is rejected
    const auto bytes = read_file(dir / "codewords.bin");
    write_file_atomic(dir / "codewords.bin", std::string_view(bytes).substr(0, bytes.size() - 16));
    EXPECT_THROW(load_far_field_codebook(dir), IoError);
    fs::remove_all(dir);
}
