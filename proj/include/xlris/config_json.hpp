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

#ifndef XLRIS_CONFIG_JSON_HPP
#define XLRIS_CONFIG_JSON_HPP

#include "config.hpp"
#include "errors.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>

namespace xlris
{
    using ordered_json = nlohmann::ordered_json;

    inline ordered_json to_json(const Position3D &p) { return ordered_json::array({p.x, p.y, p.z}); }

    inline ordered_json to_json(const SystemConfig &c)
    {
        ordered_json j;
        j["carrier_hz"] = c.carrier_hz;
        j["spacing_wavelengths"] = c.spacing_wavelengths;
        j["ris"] = {{"rows", c.ris_rows}, {"cols", c.ris_cols}};
        j["bs"] = {{"rows", c.bs_rows}, {"cols", c.bs_cols}};
        j["bs_position"] = to_json(c.bs_position);
        j["g_scatter"] = to_json(c.g_scatter);
        j["user_region"] = {{"x_min", c.user_region.x_min},
                            {"x_max", c.user_region.x_max},
                            {"y_min", c.user_region.y_min},
                            {"y_max", c.user_region.y_max}};
        j["user_height"] = c.user_height;
        j["paths_bs"] = c.paths_bs;
        j["paths_user"] = c.paths_user;
        j["strong_variance"] = c.strong_variance;
        j["weak_variance"] = c.weak_variance;
        j["phase_mode"] = std::string(to_string(c.phase_mode));
        j["bs_combining_attenuation"] = c.bs_combining_attenuation;
        j["include_array_gain"] = c.include_array_gain;
        j["grid"] = {{"s_x", c.grid.s_x},
                     {"s_y", c.grid.s_y},
                     {"delta_x", c.grid.delta_x},
                     {"delta_y", c.grid.delta_y},
                     {"x_min", c.grid.x_min},
                     {"y_min", c.grid.y_min}};
        return j;
    }

    namespace detail
    {
        template <typename Json>
        void reject_unknown_keys(const Json &j, std::initializer_list<const char *> known, const std::string &where)
        {
            if (!j.is_object())
                throw ConfigError(where + ": expected a JSON object");
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                bool ok = false;
                for (const char *k : known)
                    ok = ok || it.key() == k;
                if (!ok)
                    throw ConfigError(where + ": unknown key '" + it.key() + "'");
            }
        }

        template <typename Json, typename T>
        void read_if(const Json &j, const char *key, T &out)
        {
            if (j.contains(key))
            {
                try
                {
                    out = j.at(key).template get<T>();
                }
                catch (const nlohmann::json::exception &e)
                {
                    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
                }
            }
        }

        template <typename Json>
        void read_position(const Json &j, const char *key, Position3D &p)
        {
            if (!j.contains(key))
                return;
            const auto &a = j.at(key);
            if (!a.is_array() || a.size() != 3)
                throw ConfigError(std::string("'") + key + "' must be an array [x, y, z]");
            p = {a[0].template get<double>(), a[1].template get<double>(), a[2].template get<double>()};
        }
    }

    // Overlays the keys present in `j` onto `c`; absent keys keep their current values
    template <typename Json>
    void apply_json(const Json &j, SystemConfig &c)
    {
        using namespace detail;
        reject_unknown_keys(j,
                            {"carrier_hz", "spacing_wavelengths", "ris", "bs", "bs_position", "g_scatter",
                             "user_region", "user_height", "paths_bs", "paths_user", "strong_variance",
                             "weak_variance", "phase_mode", "bs_combining_attenuation", "include_array_gain", "grid"},
                            "system");
        read_if(j, "carrier_hz", c.carrier_hz);
        read_if(j, "spacing_wavelengths", c.spacing_wavelengths);
        if (j.contains("ris"))
        {
            reject_unknown_keys(j["ris"], {"rows", "cols"}, "system.ris");
            read_if(j["ris"], "rows", c.ris_rows);
            read_if(j["ris"], "cols", c.ris_cols);
        }
        if (j.contains("bs"))
        {
            reject_unknown_keys(j["bs"], {"rows", "cols"}, "system.bs");
            read_if(j["bs"], "rows", c.bs_rows);
            read_if(j["bs"], "cols", c.bs_cols);
        }
        read_position(j, "bs_position", c.bs_position);
        read_position(j, "g_scatter", c.g_scatter);
        if (j.contains("user_region"))
        {
            const auto &r = j["user_region"];
            reject_unknown_keys(r, {"x_min", "x_max", "y_min", "y_max"}, "system.user_region");
            read_if(r, "x_min", c.user_region.x_min);
            read_if(r, "x_max", c.user_region.x_max);
            read_if(r, "y_min", c.user_region.y_min);
            read_if(r, "y_max", c.user_region.y_max);
        }
        read_if(j, "user_height", c.user_height);
        read_if(j, "paths_bs", c.paths_bs);
        read_if(j, "paths_user", c.paths_user);
        read_if(j, "strong_variance", c.strong_variance);
        read_if(j, "weak_variance", c.weak_variance);
        if (j.contains("phase_mode"))
            c.phase_mode = phase_mode_from_string(j["phase_mode"].template get<std::string>());
        read_if(j, "bs_combining_attenuation", c.bs_combining_attenuation);
        read_if(j, "include_array_gain", c.include_array_gain);
        if (j.contains("grid"))
        {
            const auto &g = j["grid"];
            reject_unknown_keys(g, {"s_x", "s_y", "delta_x", "delta_y", "x_min", "y_min"}, "system.grid");
            read_if(g, "s_x", c.grid.s_x);
            read_if(g, "s_y", c.grid.s_y);
            read_if(g, "delta_x", c.grid.delta_x);
            read_if(g, "delta_y", c.grid.delta_y);
            read_if(g, "x_min", c.grid.x_min);
            read_if(g, "y_min", c.grid.y_min);
        }
    }

    template <typename Json>
    SystemConfig system_config_from_json(const Json &j, SystemConfig base = full_scale_config())
    {
        apply_json(j, base);
        base.validate();
        return base;
    }
}

#endif
