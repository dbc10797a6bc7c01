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

#ifndef XLRIS_CHANNEL_HPP
#define XLRIS_CHANNEL_HPP

#include "config.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "linalg.hpp"
#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace xlris
{
    // Wavenumber used in the spherical-wave phase term
    inline double phase_constant(const ArrayGeometry &geom, PhaseMode mode)
    {
        const double k = 2.0 * std::numbers::pi / geom.wavelength();
        return mode == PhaseMode::physical ? k : k * geom.spacing();
    }

    // Planar-wave response, entry (n1, n2) = exp(-j pi (u n1 + v n2)) / sqrt(N).
    // A plane wave arriving from unit direction (ux, uy, uz) at half-wavelength spacing
    // matches far_field_steering(-uz, -ux), see spatial_frequency_of().
    inline ComplexVector far_field_steering(double u, double v, const ArrayGeometry &geom)
    {
        if (!(u >= -1.0 && u <= 1.0) || !(v >= -1.0 && v <= 1.0))
            throw DomainError("far_field_steering: spatial frequencies must lie in [-1, 1]");
        const double amp = 1.0 / std::sqrt(double(geom.size()));
        ComplexVector out(geom.size());
        for (std::size_t n1 = 0; n1 < geom.n_rows(); ++n1)
            for (std::size_t n2 = 0; n2 < geom.n_cols(); ++n2)
                out[n1 * geom.n_cols() + n2] = std::polar(amp, -std::numbers::pi * (u * double(n1) + v * double(n2)));
        return out;
    }

    struct SpatialFrequency
    {
        double u, v;
    };

    // (u, v) of the far-field codeword pointing at `target` seen from the panel centre (origin)
    inline SpatialFrequency spatial_frequency_of(const Position3D &target)
    {
        const double r = distance(target, {});
        if (!(r > 0.0))
            throw DomainError("spatial_frequency_of: target at the panel centre has no direction");
        return {-target.z / r, -target.x / r};
    }

    namespace detail
    {
        inline void check_target(const Position3D &p)
        {
            if (!p.finite())
                throw DomainError("steering target must be finite");
        }

        // exp(-j kappa (|e_n - a| - |e_n - b|)) / sqrt(N) over element positions e_n; b may be absent
        inline ComplexVector spherical_steering(std::span<const Position3D> elements, const Position3D &a,
                                                const Position3D *b, double kappa)
        {
            const double amp = 1.0 / std::sqrt(double(elements.size()));
            ComplexVector out(elements.size());
            for (std::size_t n = 0; n < elements.size(); ++n)
            {
                double path = distance(elements[n], a);
                if (b != nullptr)
                    path -= distance(elements[n], *b);
                out[n] = std::polar(amp, -kappa * path);
            }
            return out;
        }
    }

    // Spherical-wave response of the RIS to a point source at `target`
    inline ComplexVector near_field_steering(const Position3D &target, const ArrayGeometry &geom,
                                             PhaseMode mode = PhaseMode::physical)
    {
        detail::check_target(target);
        const auto elements = element_positions(geom);
        return detail::spherical_steering(elements, target, nullptr, phase_constant(geom, mode));
    }

    // Cascaded response through the RIS: user-side distances minus BS-side scatter distances
    inline ComplexVector effective_near_field_steering(const Position3D &user, const Position3D &g_scatter,
                                                       const ArrayGeometry &geom, PhaseMode mode = PhaseMode::physical)
    {
        detail::check_target(user);
        detail::check_target(g_scatter);
        const auto elements = element_positions(geom);
        return detail::spherical_steering(elements, user, &g_scatter, phase_constant(geom, mode));
    }

    struct PathTerm
    {
        cplx gain;              // effective complex gain of this BS-path / user-path pair
        ComplexVector steering; // effective steering vector seen by the RIS codeword
    };

    struct ChannelRealization
    {
        std::vector<PathTerm> terms; // terms[0] is the strongest pair
        Position3D user_position;
        std::optional<std::size_t> true_optimal_flat_index; // 1-based, set once known

        const PathTerm &strongest() const
        {
            if (terms.empty())
                throw DomainError("ChannelRealization has no path terms");
            return terms.front();
        }
    };

    struct NoiseModel
    {
        double sigma2 = 0.0; // AWGN variance at unit pilot power

        static NoiseModel noiseless() { return {0.0}; }

        // SNR_dB = -10 log10(sigma2)
        static NoiseModel from_snr_db(double snr_db)
        {
            if (std::isinf(snr_db) && snr_db > 0)
                return noiseless();
            return {std::pow(10.0, -snr_db / 10.0)};
        }
    };

    // Samples one user drop. Draw order on `rng` (fixed):
    //   user x, user y;
    //   alpha^G_1..alpha^G_{L_G}; alpha^k_1..alpha^k_{L_k};
    //   BS-side scatters l1 = 2..L_G (x, y); user-side scatters l2 = 2..L_k (x, y).
    // Weak scatters are uniform over the user region at the user height.
    inline ChannelRealization sample_channel(const SystemConfig &cfg, Rng &rng)
    {
        cfg.validate();
        const ArrayGeometry ris = cfg.ris();
        const ArrayGeometry bs = cfg.bs();
        const auto &reg = cfg.user_region;

        ChannelRealization chan;
        chan.user_position = {rng.uniform(reg.x_min, reg.x_max), rng.uniform(reg.y_min, reg.y_max), cfg.user_height};

        std::vector<cplx> alpha_g(cfg.paths_bs), alpha_k(cfg.paths_user);
        for (std::size_t l = 0; l < cfg.paths_bs; ++l)
            alpha_g[l] = rng.complex_normal(l == 0 ? cfg.strong_variance : cfg.weak_variance);
        for (std::size_t l = 0; l < cfg.paths_user; ++l)
            alpha_k[l] = rng.complex_normal(l == 0 ? cfg.strong_variance : cfg.weak_variance);

        auto draw_scatter = [&]
        {
            const double x = rng.uniform(reg.x_min, reg.x_max);
            const double y = rng.uniform(reg.y_min, reg.y_max);
            return Position3D{x, y, cfg.user_height};
        };
        std::vector<Position3D> bs_side(cfg.paths_bs), user_side(cfg.paths_user);
        bs_side[0] = cfg.g_scatter;
        user_side[0] = chan.user_position;
        for (std::size_t l = 1; l < cfg.paths_bs; ++l)
            bs_side[l] = draw_scatter();
        for (std::size_t l = 1; l < cfg.paths_user; ++l)
            user_side[l] = draw_scatter();

        // BS combiner is matched to path 1; path l1 leaks through with |a_l1^H a_1|.
        // When the strongest BS-side "scatter" is the BS itself (LOS), path 1 arrives from the RIS.
        std::vector<double> attenuation(cfg.paths_bs, 1.0);
        if (cfg.bs_combining_attenuation && cfg.paths_bs > 1)
        {
            const auto bs_elements = element_positions(bs, cfg.bs_position);
            const double kappa = phase_constant(bs, PhaseMode::physical);
            auto arrival = [&](const Position3D &p)
            { return distance(p, cfg.bs_position) > 1e-9 ? p : Position3D{}; };
            const auto a1 = detail::spherical_steering(bs_elements, arrival(bs_side[0]), nullptr, kappa);
            for (std::size_t l = 1; l < cfg.paths_bs; ++l)
            {
                const auto al = detail::spherical_steering(bs_elements, arrival(bs_side[l]), nullptr, kappa);
                attenuation[l] = std::abs(dot_t(conj(al), a1));
            }
        }

        const double n = double(ris.size()), m = double(bs.size());
        const double scale = cfg.include_array_gain
                                 ? std::sqrt(m * n * n / double(cfg.paths_bs * cfg.paths_user))
                                 : 1.0;
        const auto ris_elements = element_positions(ris);
        const double kappa = phase_constant(ris, cfg.phase_mode);

        chan.terms.reserve(cfg.paths_bs * cfg.paths_user);
        for (std::size_t l1 = 0; l1 < cfg.paths_bs; ++l1)
            for (std::size_t l2 = 0; l2 < cfg.paths_user; ++l2)
                chan.terms.push_back({scale * attenuation[l1] * alpha_g[l1] * alpha_k[l2],
                                      detail::spherical_steering(ris_elements, user_side[l2], &bs_side[l1], kappa)});
        return chan;
    }

    // Noise-free superposition sum_terms gain * (codeword^T steering)
    inline cplx noiseless_response(std::span<const cplx> codeword, const ChannelRealization &chan)
    {
        cplx y = 0.0;
        for (const auto &t : chan.terms)
        {
            if (codeword.size() != t.steering.size())
                throw DomainError("codeword length does not match the RIS size");
            y += t.gain * dot_t(codeword, t.steering);
        }
        return y;
    }

    // One pilot slot with x = 1. A noise sample is always drawn so that the rng stream
    // does not depend on sigma2.
    inline cplx received_signal(std::span<const cplx> codeword, const ChannelRealization &chan,
                                const NoiseModel &noise, Rng &rng)
    {
        const cplx y = noiseless_response(codeword, chan);
        return y + rng.complex_normal(noise.sigma2);
    }

    // Q slots, one per listed codeword row (0-based row indices)
    inline ComplexVector receive_batch(const CodewordMatrix &codewords, std::span<const std::size_t> rows,
                                       const ChannelRealization &chan, const NoiseModel &noise, Rng &rng)
    {
        ComplexVector y;
        y.reserve(rows.size());
        for (std::size_t r : rows)
        {
            if (r >= codewords.rows())
                throw DomainError("receive_batch: codeword row out of range");
            y.push_back(received_signal(codewords.row(r), chan, noise, rng));
        }
        return y;
    }

    // Q slots over every row of the matrix
    inline ComplexVector receive_batch(const CodewordMatrix &codewords, const ChannelRealization &chan,
                                       const NoiseModel &noise, Rng &rng)
    {
        ComplexVector y;
        y.reserve(codewords.rows());
        for (std::size_t r = 0; r < codewords.rows(); ++r)
            y.push_back(received_signal(codewords.row(r), chan, noise, rng));
        return y;
    }
}

#endif
