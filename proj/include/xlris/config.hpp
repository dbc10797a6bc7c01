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

#ifndef XLRIS_CONFIG_HPP
#define XLRIS_CONFIG_HPP

#include "errors.hpp"
#include "geometry.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

namespace xlris
{
    // Phase constant used for spherical-wave steering vectors:
    //  physical      -> kappa = 2 pi / lambda
    //  spacing_scaled -> kappa = 2 pi d / lambda
    enum class PhaseMode
    {
        physical,
        spacing_scaled,
    };

    inline std::string_view to_string(PhaseMode m)
    {
        return m == PhaseMode::physical ? "physical" : "spacing_scaled";
    }

    inline PhaseMode phase_mode_from_string(std::string_view s)
    {
        if (s == "physical")
            return PhaseMode::physical;
        if (s == "spacing_scaled")
            return PhaseMode::spacing_scaled;
        throw ConfigError("unknown phase_mode '" + std::string(s) + "'");
    }

    // Rectangle in the horizontal plane from which users (and weak-path scatters) are drawn
    struct RegionBounds
    {
        double x_min = -50.0, x_max = 50.0;
        double y_min = -30.0, y_max = 30.0;
    };

    // Near-field codebook sampling grid: x_s = x_min + (s - 1) delta_x, s = 1..s_x (same for y)
    struct GridSpec
    {
        std::size_t s_x = 100, s_y = 60;
        double delta_x = 1.0, delta_y = 1.0;
        double x_min = -49.5, y_min = -29.5;

        std::size_t size() const { return s_x * s_y; }
    };

    struct SystemConfig
    {
        double carrier_hz = 30e9;
        double spacing_wavelengths = 0.5; // element spacing d / lambda

        std::size_t ris_rows = 16, ris_cols = 32; // N = 512
        std::size_t bs_rows = 16, bs_cols = 32;   // M = 512

        Position3D bs_position{20.0, 20.0, 0.0};
        Position3D g_scatter{20.0, 20.0, 0.0}; // strongest BS-side scatter, fixed and known

        RegionBounds user_region{};
        double user_height = 0.0;

        std::size_t paths_bs = 3;   // L_G
        std::size_t paths_user = 3; // L_k
        double strong_variance = 1.0;
        double weak_variance = 1e-3;

        PhaseMode phase_mode = PhaseMode::physical;
        bool bs_combining_attenuation = true; // scale cross terms by |a_l^H a_1|
        bool include_array_gain = true;       // sqrt(M N^2 / (L_G L_k)) factor on every term

        GridSpec grid{};

        double wavelength() const { return wavelength_from_frequency(carrier_hz); }
        ArrayGeometry ris() const { return {ris_rows, ris_cols, wavelength(), spacing_wavelengths * wavelength()}; }
        ArrayGeometry bs() const { return {bs_rows, bs_cols, wavelength(), spacing_wavelengths * wavelength()}; }

        void validate() const
        {
            if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
                throw ConfigError("carrier_hz must be positive");
            if (!(spacing_wavelengths > 0.0))
                throw ConfigError("spacing_wavelengths must be positive");
            if (ris_rows == 0 || ris_cols == 0 || bs_rows == 0 || bs_cols == 0)
                throw ConfigError("array dimensions must be positive");
            if (!(user_region.x_max > user_region.x_min) || !(user_region.y_max > user_region.y_min))
                throw ConfigError("user region is empty");
            if (paths_bs == 0 || paths_user == 0)
                throw ConfigError("path counts must be at least 1");
            if (!(strong_variance >= 0.0) || !(weak_variance >= 0.0))
                throw ConfigError("path gain variances must be non-negative");
            if (grid.s_x == 0 || grid.s_y == 0)
                throw ConfigError("grid sizes must be positive");
            if (!(grid.delta_x > 0.0) || !(grid.delta_y > 0.0))
                throw ConfigError("grid spacings must be positive");
            if (!bs_position.finite() || !g_scatter.finite() || !std::isfinite(user_height))
                throw ConfigError("positions must be finite");
        }
    };

    // Full-size system: 512-element RIS and BS at 30 GHz, 100 x 60 position grid at 1 m pitch
    inline SystemConfig full_scale_config() { return SystemConfig{}; }

    // Desk-size system: 8 x 8 panels, 20 x 12 grid (240 codewords) on a one-sided region
    inline SystemConfig desk_scale_config()
    {
        SystemConfig c;
        c.ris_rows = c.ris_cols = 8;
        c.bs_rows = c.bs_cols = 8;
        c.user_region = {-10.0, 10.0, 1.0, 13.0};
        c.grid = {20, 12, 1.0, 1.0, -9.5, 1.5};
        return c;
    }
}

#endif
