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

#ifndef XLRIS_CODEBOOK_IO_HPP
#define XLRIS_CODEBOOK_IO_HPP

#include "codebook.hpp"
#include "config_json.hpp"
#include "errors.hpp"
#include "tensor_io.hpp"

#include <cstddef>
#include <string>
#include <vector>

// Codebook cache: <dir>/codebook.json (metadata) + <dir>/codewords.bin
// (rows x length complex values, float64 LE, real then imaginary, row-major).

namespace xlris
{
    namespace detail
    {
        inline std::string encode_codewords(const CodewordMatrix &m)
        {
            std::vector<double> flat;
            flat.reserve(m.data().size() * 2);
            for (const cplx &v : m.data())
            {
                flat.push_back(v.real());
                flat.push_back(v.imag());
            }
            return encode_le<double>(flat);
        }

        inline CodewordMatrix decode_codewords(const fs::path &file, std::size_t rows, std::size_t length)
        {
            const auto flat = read_tensor<double>(file, rows * length * 2);
            CodewordMatrix m(rows, length);
            for (std::size_t r = 0; r < rows; ++r)
            {
                auto row = m.row(r);
                for (std::size_t n = 0; n < length; ++n)
                    row[n] = {flat[2 * (r * length + n)], flat[2 * (r * length + n) + 1]};
            }
            return m;
        }

        inline nlohmann::json read_codebook_header(const fs::path &dir, const char *expected_kind)
        {
            nlohmann::json j;
            try
            {
                j = nlohmann::json::parse(read_file(dir / "codebook.json"));
            }
            catch (const nlohmann::json::exception &e)
            {
                throw IoError((dir / "codebook.json").string() + ": " + e.what());
            }
            if (j.value("kind", std::string()) != expected_kind)
                throw IoError((dir / "codebook.json").string() + ": not a " + expected_kind + " codebook");
            return j;
        }

        inline void prepare_dir(const fs::path &dir)
        {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec)
                throw IoError("cannot create " + dir.string() + ": " + ec.message());
        }
    }

    inline void save_codebook(const NearFieldCodebook &cb, const fs::path &dir)
    {
        detail::prepare_dir(dir);
        ordered_json j;
        j["kind"] = "near_field";
        j["rows"] = cb.codewords.rows();
        j["length"] = cb.codewords.length();
        j["dtype"] = "complex128le";
        j["grid"] = {{"S_x", cb.grid.s_x},         {"S_y", cb.grid.s_y},         {"delta_x", cb.grid.delta_x},
                     {"delta_y", cb.grid.delta_y}, {"x_min", cb.grid.x_min},     {"y_min", cb.grid.y_min}};
        j["g_scatter"] = to_json(cb.g_scatter);
        j["user_height"] = cb.user_height;
        j["phase_mode"] = std::string(to_string(cb.phase_mode));
        write_file_atomic(dir / "codewords.bin", detail::encode_codewords(cb.codewords));
        write_file_atomic(dir / "codebook.json", j.dump(2) + "\n");
    }

    inline void save_codebook(const FarFieldCodebook &cb, const fs::path &dir)
    {
        detail::prepare_dir(dir);
        ordered_json j;
        j["kind"] = "far_field";
        j["rows"] = cb.codewords.rows();
        j["length"] = cb.codewords.length();
        j["dtype"] = "complex128le";
        j["theta"] = cb.theta;
        j["phi"] = cb.phi;
        write_file_atomic(dir / "codewords.bin", detail::encode_codewords(cb.codewords));
        write_file_atomic(dir / "codebook.json", j.dump(2) + "\n");
    }

    inline NearFieldCodebook load_near_field_codebook(const fs::path &dir)
    {
        const auto j = detail::read_codebook_header(dir, "near_field");
        NearFieldCodebook cb;
        try
        {
            const auto &g = j.at("grid");
            cb.grid = {g.at("S_x").get<std::size_t>(), g.at("S_y").get<std::size_t>(), g.at("delta_x").get<double>(),
                       g.at("delta_y").get<double>(),  g.at("x_min").get<double>(),     g.at("y_min").get<double>()};
            const auto &p = j.at("g_scatter");
            cb.g_scatter = {p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()};
            cb.user_height = j.at("user_height").get<double>();
            cb.phase_mode = phase_mode_from_string(j.at("phase_mode").get<std::string>());
            const auto rows = j.at("rows").get<std::size_t>();
            if (rows != cb.grid.size())
                throw IoError("codebook rows disagree with the grid");
            cb.codewords = detail::decode_codewords(dir / "codewords.bin", rows, j.at("length").get<std::size_t>());
        }
        catch (const nlohmann::json::exception &e)
        {
            throw IoError(std::string("malformed codebook header: ") + e.what());
        }
        return cb;
    }

    inline FarFieldCodebook load_far_field_codebook(const fs::path &dir)
    {
        const auto j = detail::read_codebook_header(dir, "far_field");
        FarFieldCodebook cb;
        try
        {
            cb.theta = j.at("theta").get<std::vector<double>>();
            cb.phi = j.at("phi").get<std::vector<double>>();
            const auto rows = j.at("rows").get<std::size_t>();
            if (rows != cb.theta.size() * cb.phi.size())
                throw IoError("codebook rows disagree with the angular grids");
            cb.codewords = detail::decode_codewords(dir / "codewords.bin", rows, j.at("length").get<std::size_t>());
        }
        catch (const nlohmann::json::exception &e)
        {
            throw IoError(std::string("malformed codebook header: ") + e.what());
        }
        return cb;
    }
}

#endif
