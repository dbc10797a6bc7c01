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

#ifndef XLRIS_GEOMETRY_HPP
#define XLRIS_GEOMETRY_HPP

#include "errors.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace xlris
{
    inline constexpr double speed_of_light = 299792458.0; // m/s

    struct Position3D
    {
        double x = 0.0, y = 0.0, z = 0.0; // [m]

        bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
        friend bool operator==(const Position3D &, const Position3D &) = default;
    };

    inline double distance(const Position3D &a, const Position3D &b)
    {
        const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }

    inline double wavelength_from_frequency(double carrier_hz)
    {
        if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
            throw DomainError("carrier frequency must be positive and finite");
        return speed_of_light / carrier_hz;
    }

    // Uniform planar panel lying in the x-z plane (y = 0 before translation).
    // Rows (n1) step along z, columns (n2) step along x; element index n = n1 * n_cols + n2.
    class ArrayGeometry
    {
    public:
        // spacing <= 0 selects the half-wavelength default
        ArrayGeometry(std::size_t n_rows, std::size_t n_cols, double wavelength, double spacing = 0.0)
            : n_rows_(n_rows), n_cols_(n_cols), wavelength_(wavelength),
              spacing_(spacing > 0.0 ? spacing : 0.5 * wavelength)
        {
            if (n_rows_ == 0 || n_cols_ == 0)
                throw DomainError("ArrayGeometry: row and column counts must be positive");
            if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_))
                throw DomainError("ArrayGeometry: wavelength must be positive and finite");
            if (!std::isfinite(spacing_))
                throw DomainError("ArrayGeometry: spacing must be finite");
        }

        std::size_t n_rows() const { return n_rows_; }
        std::size_t n_cols() const { return n_cols_; }
        std::size_t size() const { return n_rows_ * n_cols_; }
        double spacing() const { return spacing_; }
        double wavelength() const { return wavelength_; }

    private:
        std::size_t n_rows_, n_cols_;
        double wavelength_;
        double spacing_;
    };

    // Element coordinates, row-major (n1 outer, n2 inner), centred on `centre`.
    inline std::vector<Position3D> element_positions(const ArrayGeometry &geom, const Position3D &centre = {})
    {
        std::vector<Position3D> pos;
        pos.reserve(geom.size());
        const double d = geom.spacing();
        const double row_offset = 0.5 * double(geom.n_rows() - 1);
        const double col_offset = 0.5 * double(geom.n_cols() - 1);
        for (std::size_t n1 = 0; n1 < geom.n_rows(); ++n1)
            for (std::size_t n2 = 0; n2 < geom.n_cols(); ++n2)
                pos.push_back({centre.x + (double(n2) - col_offset) * d,
                               centre.y,
                               centre.z + (double(n1) - row_offset) * d});
        return pos;
    }

    // Panel diagonal
    inline double aperture(const ArrayGeometry &geom)
    {
        const double a = double(geom.n_rows() - 1) * geom.spacing();
        const double b = double(geom.n_cols() - 1) * geom.spacing();
        return std::sqrt(a * a + b * b);
    }

    // Near/far-field boundary 2 D^2 / lambda
    inline double rayleigh_distance(double aperture_m, double wavelength)
    {
        if (!(aperture_m >= 0.0))
            throw DomainError("rayleigh_distance: aperture must be non-negative");
        if (!(wavelength > 0.0))
            throw DomainError("rayleigh_distance: wavelength must be positive");
        return 2.0 * aperture_m * aperture_m / wavelength;
    }
}

#endif
