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

#ifndef XLRIS_SCHEMES_HPP
#define XLRIS_SCHEMES_HPP

#include "channel.hpp"
#include "codebook.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "predictor.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

// Beam-training schemes. All index arguments and results are 1-based flat codebook indices,
// and every argmax breaks ties toward the smallest index.

namespace xlris
{
    struct SchemeResult
    {
        std::size_t chosen_flat_index = 0;
        std::size_t probes_used = 0;
        std::optional<ProbabilityPair> auxiliary;
    };

    // Position of the first largest |y|
    inline std::size_t argmax_magnitude(std::span<const cplx> y)
    {
        if (y.empty())
            throw DomainError("argmax over an empty measurement vector");
        std::size_t best = 0;
        double best_power = std::norm(y[0]);
        for (std::size_t i = 1; i < y.size(); ++i)
        {
            const double p = std::norm(y[i]);
            if (p > best_power)
                best = i, best_power = p;
        }
        return best;
    }

    inline std::size_t argmax(std::span<const double> p)
    {
        if (p.empty())
            throw DomainError("argmax over an empty vector");
        return std::size_t(std::max_element(p.begin(), p.end()) - p.begin()); // first maximum
    }

    // Indices (1-based) of the k largest entries, by descending value then ascending index
    inline std::vector<std::size_t> top_indices(std::span<const double> p, std::size_t k)
    {
        if (k < 1 || k > p.size())
            throw DomainError("top_indices: k must lie in [1, |p|]");
        std::vector<std::size_t> idx(p.size());
        std::iota(idx.begin(), idx.end(), std::size_t(0));
        std::partial_sort(idx.begin(), idx.begin() + std::ptrdiff_t(k), idx.end(),
                          [&](std::size_t a, std::size_t b)
                          { return p[a] > p[b] || (p[a] == p[b] && a < b); });
        idx.resize(k);
        for (auto &i : idx)
            ++i;
        return idx;
    }

    // Exhaustive sweep over the whole near-field codebook
    inline SchemeResult exhaustive_sweep(const NearFieldCodebook &cb, const ChannelRealization &chan,
                                         const NoiseModel &noise, Rng &rng)
    {
        if (cb.size() == 0)
            throw DomainError("exhaustive_sweep: empty codebook");
        const auto y = receive_batch(cb.codewords, chan, noise, rng);
        return {argmax_magnitude(y) + 1, cb.size(), std::nullopt};
    }

    // Best codeword against the strongest path alone, without noise
    inline std::size_t true_optimal(const NearFieldCodebook &cb, const ChannelRealization &chan)
    {
        const auto &steering = chan.strongest().steering;
        std::size_t best = 1;
        double best_power = -1.0;
        for (std::size_t s = 1; s <= cb.size(); ++s)
        {
            const double p = std::norm(dot_t(cb.codeword(s), steering));
            if (p > best_power)
                best = s, best_power = p;
        }
        return best;
    }

    namespace detail
    {
        struct AxisCells
        {
            std::size_t count;  // number of cells
            std::size_t factor; // cell width

            std::size_t first(std::size_t cell) const { return cell * factor + 1; }
            std::size_t last(std::size_t cell, std::size_t axis_size) const
            {
                return std::min((cell + 1) * factor, axis_size);
            }
            std::size_t centre(std::size_t cell, std::size_t axis_size) const
            {
                return first(cell) + (last(cell, axis_size) - first(cell)) / 2;
            }
        };
    }

    // Two-level search: stage 1 sweeps one representative (the cell centre) per c x c cell of the
    // fine grid, stage 2 sweeps every fine codeword of the winning cell. Boundary cells are clipped.
    inline SchemeResult hierarchical_search(const NearFieldCodebook &cb, std::size_t coarsening,
                                            const ChannelRealization &chan, const NoiseModel &noise, Rng &rng)
    {
        if (coarsening < 1)
            throw DomainError("hierarchical_search: coarsening factor must be at least 1");
        const auto &g = cb.grid;
        const detail::AxisCells cx{(g.s_x + coarsening - 1) / coarsening, coarsening};
        const detail::AxisCells cy{(g.s_y + coarsening - 1) / coarsening, coarsening};

        std::vector<std::size_t> coarse_rows;
        coarse_rows.reserve(cx.count * cy.count);
        for (std::size_t j = 0; j < cy.count; ++j)
            for (std::size_t i = 0; i < cx.count; ++i)
                coarse_rows.push_back(flat_index(cx.centre(i, g.s_x), cy.centre(j, g.s_y), g.s_x, g.s_y) - 1);
        const auto y1 = receive_batch(cb.codewords, coarse_rows, chan, noise, rng);
        const std::size_t win = argmax_magnitude(y1);
        const std::size_t wi = win % cx.count, wj = win / cx.count;

        std::vector<std::size_t> cell_rows;
        for (std::size_t sy = cy.first(wj); sy <= cy.last(wj, g.s_y); ++sy)
            for (std::size_t sx = cx.first(wi); sx <= cx.last(wi, g.s_x); ++sx)
                cell_rows.push_back(flat_index(sx, sy, g.s_x, g.s_y) - 1);

        // A one-codeword cell is its own representative and already measured
        if (cell_rows.size() == 1)
            return {cell_rows.front() + 1, coarse_rows.size(), std::nullopt};

        const auto y2 = receive_batch(cb.codewords, cell_rows, chan, noise, rng);
        return {cell_rows[argmax_magnitude(y2)] + 1, coarse_rows.size() + cell_rows.size(), std::nullopt};
    }

    // ---- predictor-based schemes, staged so that predictions can be batched across trials ----

    // First phase of FBT: every far-field codeword once (Q = N)
    inline ComplexVector probe_far_field(const FarFieldCodebook &far, const ChannelRealization &chan,
                                         const NoiseModel &noise, Rng &rng)
    {
        return receive_batch(far.codewords, chan, noise, rng);
    }

    // First phase of (improved) PNBT: only the probe-set codewords (Q = I)
    inline ComplexVector probe_subset(const NearFieldCodebook &near, const ProbeSet &probes,
                                      const ChannelRealization &chan, const NoiseModel &noise, Rng &rng)
    {
        const auto rows = probes.rows();
        return receive_batch(near.codewords, rows, chan, noise, rng);
    }

    // Per-axis argmax of a validated prediction -> flat index
    inline std::size_t select_from_prediction(const ProbabilityPair &p, const GridSpec &grid)
    {
        validate(p, grid.s_x, grid.s_y);
        return flat_index(argmax(p.p_x) + 1, argmax(p.p_y) + 1, grid.s_x, grid.s_y);
    }

    struct CandidateSets
    {
        std::vector<std::size_t> candidates; // B: every (sigma, gamma) cross pair, ascending
        std::vector<std::size_t> reprobe;    // B' = B \ (B n D), ascending
        std::vector<std::size_t> reused;     // B n D, ascending
    };

    inline CandidateSets candidate_sets(std::span<const std::size_t> top_x, std::span<const std::size_t> top_y,
                                        const GridSpec &grid, const ProbeSet &probes)
    {
        CandidateSets sets;
        sets.candidates.reserve(top_x.size() * top_y.size());
        for (std::size_t gamma : top_y)
            for (std::size_t sigma : top_x)
                sets.candidates.push_back(flat_index(sigma, gamma, grid.s_x, grid.s_y));
        std::sort(sets.candidates.begin(), sets.candidates.end());
        sets.candidates.erase(std::unique(sets.candidates.begin(), sets.candidates.end()), sets.candidates.end());
        for (std::size_t b : sets.candidates)
            (probes.contains(b) ? sets.reused : sets.reprobe).push_back(b);
        return sets;
    }

    // Second phase of improved PNBT. `first_phase` holds the probe-set measurements in probe order.
    inline SchemeResult refine_candidates(const NearFieldCodebook &near, const ProbeSet &probes,
                                          std::span<const cplx> first_phase, const ProbabilityPair &prediction,
                                          std::size_t top_k, std::size_t top_l, const ChannelRealization &chan,
                                          const NoiseModel &noise, Rng &rng)
    {
        const auto &g = near.grid;
        if (top_k < 1 || top_k > g.s_x || top_l < 1 || top_l > g.s_y)
            throw DomainError("improved PNBT: K must lie in [1, S_x] and L in [1, S_y]");
        if (first_phase.size() != probes.size())
            throw DomainError("improved PNBT: first-phase measurement count does not match the probe set");
        validate(prediction, g.s_x, g.s_y);

        const auto sets = candidate_sets(top_indices(prediction.p_x, top_k), top_indices(prediction.p_y, top_l), g,
                                         probes);
        std::vector<std::size_t> rows(sets.reprobe.size());
        std::transform(sets.reprobe.begin(), sets.reprobe.end(), rows.begin(), [](std::size_t s)
                       { return s - 1; });
        const auto fresh = receive_batch(near.codewords, rows, chan, noise, rng);

        // Final argmax over all of B, in ascending flat order, reusing first-phase values for B n D
        std::vector<cplx> y(sets.candidates.size());
        std::size_t next_fresh = 0;
        for (std::size_t j = 0; j < sets.candidates.size(); ++j)
        {
            const std::size_t b = sets.candidates[j];
            if (probes.contains(b))
            {
                const auto pos = std::lower_bound(probes.flat_indices.begin(), probes.flat_indices.end(), b);
                y[j] = first_phase[std::size_t(pos - probes.flat_indices.begin())];
            }
            else
                y[j] = fresh[next_fresh++];
        }
        return {sets.candidates[argmax_magnitude(y)], probes.size() + sets.reprobe.size(), prediction};
    }

    // Far-field beam-based training: probe all N far-field codewords, predict the near-field optimum
    inline SchemeResult fbt(const FarFieldCodebook &far, const NearFieldCodebook &near, const Predictor &predictor,
                            const ChannelRealization &chan, const NoiseModel &noise, Rng &rng)
    {
        const auto y = probe_far_field(far, chan, noise, rng);
        auto p = predictor.predict_one(y, chan.true_optimal_flat_index);
        const std::size_t s = select_from_prediction(p, near.grid);
        return {s, far.size(), std::move(p)};
    }

    // Partial near-field beam-based training: probe the equally spaced subset only
    inline SchemeResult pnbt(const NearFieldCodebook &near, const ProbeSet &probes, const Predictor &predictor,
                             const ChannelRealization &chan, const NoiseModel &noise, Rng &rng)
    {
        const auto y = probe_subset(near, probes, chan, noise, rng);
        auto p = predictor.predict_one(y, chan.true_optimal_flat_index);
        const std::size_t s = select_from_prediction(p, near.grid);
        return {s, probes.size(), std::move(p)};
    }

    // PNBT followed by a re-probe of the top-K x top-L candidate cross product
    inline SchemeResult improved_pnbt(const NearFieldCodebook &near, const ProbeSet &probes,
                                      const Predictor &predictor, std::size_t top_k, std::size_t top_l,
                                      const ChannelRealization &chan, const NoiseModel &noise, Rng &rng)
    {
        const auto &g = near.grid;
        if (top_k < 1 || top_k > g.s_x || top_l < 1 || top_l > g.s_y)
            throw DomainError("improved PNBT: K must lie in [1, S_x] and L in [1, S_y]");
        const auto y = probe_subset(near, probes, chan, noise, rng);
        const auto p = predictor.predict_one(y, chan.true_optimal_flat_index);
        return refine_candidates(near, probes, y, p, top_k, top_l, chan, noise, rng);
    }
}

#endif
