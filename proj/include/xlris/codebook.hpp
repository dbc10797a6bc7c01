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

#ifndef XLRIS_CODEBOOK_HPP
#define XLRIS_CODEBOOK_HPP

#include "channel.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace xlris
{
    // DFT-grid codebook. Codeword (n, m) = conj(far_field_steering(theta_n, phi_m)),
    // listed theta-major, with theta_n = (2n - N1 - 1) / N1 and phi_m = (2m - N2 - 1) / N2.
    struct FarFieldCodebook
    {
        CodewordMatrix codewords;
        std::vector<double> theta; // per-row grid, length N1
        std::vector<double> phi;   // per-column grid, length N2

        std::size_t size() const { return codewords.rows(); }
    };

    inline std::vector<double> dft_grid(std::size_t count)
    {
        std::vector<double> g(count);
        for (std::size_t n = 1; n <= count; ++n)
            g[n - 1] = (2.0 * double(n) - double(count) - 1.0) / double(count);
        return g;
    }

    inline FarFieldCodebook build_far_field_codebook(const ArrayGeometry &geom)
    {
        FarFieldCodebook cb;
        cb.theta = dft_grid(geom.n_rows());
        cb.phi = dft_grid(geom.n_cols());
        cb.codewords = CodewordMatrix(geom.size(), geom.size());
        std::size_t r = 0;
        for (double t : cb.theta)
            for (double p : cb.phi)
                cb.codewords.set_row(r++, conj(far_field_steering(t, p, geom)));
        return cb;
    }

    // 1-based (s_x, s_y) <-> flat index s = (s_y - 1) S_x + s_x
    inline std::size_t flat_index(std::size_t s_x, std::size_t s_y, std::size_t count_x, std::size_t count_y)
    {
        if (s_x < 1 || s_x > count_x || s_y < 1 || s_y > count_y)
            throw DomainError("flat_index: grid index out of range");
        return (s_y - 1) * count_x + s_x;
    }

    struct IndexPair
    {
        std::size_t s_x, s_y;
        friend bool operator==(const IndexPair &, const IndexPair &) = default;
    };

    inline IndexPair index_pair(std::size_t s, std::size_t count_x, std::size_t count_y)
    {
        if (count_x == 0 || s < 1 || s > count_x * count_y)
            throw DomainError("index_pair: flat index out of range");
        return {(s - 1) % count_x + 1, (s - 1) / count_x + 1};
    }

    // Position-grid codebook, flat order y-major: s = (s_y - 1) S_x + s_x
    struct NearFieldCodebook
    {
        CodewordMatrix codewords;
        GridSpec grid;
        Position3D g_scatter;
        double user_height = 0.0;
        PhaseMode phase_mode = PhaseMode::physical;

        std::size_t size() const { return codewords.rows(); }

        // 1-based flat index
        std::span<const cplx> codeword(std::size_t s) const
        {
            if (s < 1 || s > size())
                throw DomainError("near-field codeword index out of range");
            return codewords.row(s - 1);
        }

        Position3D point(std::size_t s) const
        {
            const auto [sx, sy] = index_pair(s, grid.s_x, grid.s_y);
            return {grid.x_min + double(sx - 1) * grid.delta_x, grid.y_min + double(sy - 1) * grid.delta_y, user_height};
        }
    };

    inline NearFieldCodebook build_near_field_codebook(const GridSpec &grid, const ArrayGeometry &geom,
                                                       const Position3D &g_scatter, double user_height,
                                                       PhaseMode mode = PhaseMode::physical)
    {
        if (grid.s_x < 1 || grid.s_y < 1)
            throw DomainError("build_near_field_codebook: grid sizes must be positive");
        if (!(grid.delta_x > 0.0) || !(grid.delta_y > 0.0))
            throw DomainError("build_near_field_codebook: grid spacings must be positive");

        NearFieldCodebook cb;
        cb.grid = grid;
        cb.g_scatter = g_scatter;
        cb.user_height = user_height;
        cb.phase_mode = mode;
        cb.codewords = CodewordMatrix(grid.size(), geom.size());

        const auto elements = element_positions(geom);
        const double kappa = phase_constant(geom, mode);
        const double amp = 1.0 / std::sqrt(double(geom.size()));
        std::vector<double> scatter_dist(elements.size());
        for (std::size_t n = 0; n < elements.size(); ++n)
            scatter_dist[n] = distance(elements[n], g_scatter);

        for (std::size_t s = 1; s <= grid.size(); ++s)
        {
            const Position3D p = cb.point(s);
            auto row = cb.codewords.row(s - 1);
            // conj(exp(-j k (Dk - DG))) = exp(+j k (Dk - DG))
            for (std::size_t n = 0; n < elements.size(); ++n)
                row[n] = std::polar(amp, kappa * (distance(elements[n], p) - scatter_dist[n]));
        }
        return cb;
    }

    inline NearFieldCodebook build_near_field_codebook(const SystemConfig &cfg)
    {
        return build_near_field_codebook(cfg.grid, cfg.ris(), cfg.g_scatter, cfg.user_height, cfg.phase_mode);
    }

    // Equally spaced first-phase probes: t_i = i D, i = 1..floor(total / D)
    struct ProbeSet
    {
        std::vector<std::size_t> flat_indices; // 1-based, strictly increasing

        std::size_t size() const { return flat_indices.size(); }
        bool contains(std::size_t s) const { return std::binary_search(flat_indices.begin(), flat_indices.end(), s); }

        std::vector<std::size_t> rows() const
        {
            std::vector<std::size_t> r(flat_indices.size());
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] = flat_indices[i] - 1;
            return r;
        }
    };

    inline ProbeSet subsample(std::size_t total, std::size_t interval)
    {
        if (interval < 1)
            throw DomainError("subsample: sampling interval must be at least 1");
        ProbeSet ps;
        const std::size_t count = total / interval;
        if (count == 0)
            std::clog << "xlris: warning: sampling interval " << interval << " exceeds codebook size " << total
                      << ", probe set is empty\n";
        ps.flat_indices.reserve(count);
        for (std::size_t i = 1; i <= count; ++i)
            ps.flat_indices.push_back(i * interval);
        return ps;
    }
}

#endif
