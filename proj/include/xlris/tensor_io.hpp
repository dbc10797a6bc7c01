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

#ifndef XLRIS_TENSOR_IO_HPP
#define XLRIS_TENSOR_IO_HPP

#include "errors.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Raw little-endian tensors: no header, shape lives in the accompanying JSON manifest.

namespace xlris
{
    namespace fs = std::filesystem;

    namespace detail
    {
        template <typename T>
        T to_little_endian(T v)
        {
            static_assert(sizeof(T) == 4 || sizeof(T) == 8);
            if constexpr (std::endian::native == std::endian::little)
                return v;
            else
            {
                unsigned char b[sizeof(T)];
                std::memcpy(b, &v, sizeof(T));
                for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
                    std::swap(b[i], b[sizeof(T) - 1 - i]);
                std::memcpy(&v, b, sizeof(T));
                return v;
            }
        }
    }

    // Writes `bytes` to `path` via a sibling temp file and rename
    inline void write_file_atomic(const fs::path &path, std::string_view bytes)
    {
        fs::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IoError("cannot open " + tmp.string() + " for writing");
            out.write(bytes.data(), std::streamsize(bytes.size()));
            if (!out)
                throw IoError("write failed: " + tmp.string());
        }
        std::error_code ec;
        fs::rename(tmp, path, ec);
        if (ec)
            throw IoError("cannot rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
    }

    inline std::string read_file(const fs::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open " + path.string());
        std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return s;
    }

    template <typename T>
    std::string encode_le(std::span<const T> values)
    {
        std::string bytes(values.size() * sizeof(T), '\0');
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            const T v = detail::to_little_endian(values[i]);
            std::memcpy(bytes.data() + i * sizeof(T), &v, sizeof(T));
        }
        return bytes;
    }

    template <typename T>
    std::vector<T> decode_le(std::string_view bytes, const std::string &what)
    {
        if (bytes.size() % sizeof(T) != 0)
            throw IoError(what + ": size " + std::to_string(bytes.size()) + " is not a multiple of " +
                          std::to_string(sizeof(T)));
        std::vector<T> out(bytes.size() / sizeof(T));
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            T v;
            std::memcpy(&v, bytes.data() + i * sizeof(T), sizeof(T));
            out[i] = detail::to_little_endian(v);
        }
        return out;
    }

    template <typename T>
    void write_tensor(const fs::path &path, std::span<const T> values)
    {
        write_file_atomic(path, encode_le(values));
    }

    // Reads a tensor and checks its element count
    template <typename T>
    std::vector<T> read_tensor(const fs::path &path, std::size_t expected_count)
    {
        auto v = decode_le<T>(read_file(path), path.string());
        if (v.size() != expected_count)
            throw IoError(path.string() + ": expected " + std::to_string(expected_count) + " values, found " +
                          std::to_string(v.size()));
        return v;
    }
}

#endif
