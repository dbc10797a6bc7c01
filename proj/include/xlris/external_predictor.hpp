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

#ifndef XLRIS_EXTERNAL_PREDICTOR_HPP
#define XLRIS_EXTERNAL_PREDICTOR_HPP

#include "dataset.hpp"
#include "errors.hpp"
#include "predictor.hpp"
#include "tensor_io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

// Predictor backed by an external process.
//
// For each batch a request directory is written in the dataset layout minus labels.bin
// (manifest.json with "request": true, features.bin). The command is run as
//     <command> <request_dir> <response_dir>
// and must write into response_dir:
//     probs_x.bin  n x S_x float32 LE, row-major
//     probs_y.bin  n x S_y float32 LE, row-major
// Rows are accepted when no entry is below -1e-6 and, after clipping negatives to zero,
// they sum to 1 within 1e-4. Accepted rows are renormalized to sum to exactly 1.

namespace xlris
{
    inline constexpr double protocol_negative_tolerance = 1e-6;
    inline constexpr double protocol_sum_tolerance = 1e-4;

    namespace detail
    {
        inline std::string shell_quote(const std::string &s)
        {
            std::string q = "'";
            for (char c : s)
            {
                if (c == '\'')
                    q += "'\\''";
                else
                    q += c;
            }
            return q + "'";
        }

        inline fs::path unique_temp_dir(const char *tag)
        {
            static std::atomic<unsigned> counter{0};
            const auto base = fs::temp_directory_path();
            for (int attempt = 0; attempt < 100; ++attempt)
            {
                const fs::path p = base / ("xlris-" + std::string(tag) + "-" + std::to_string(::getpid()) + "-" +
                                           std::to_string(counter++));
                if (fs::create_directory(p))
                    return p;
            }
            throw IoError("cannot create a temporary directory under " + base.string());
        }

        class TempDir
        {
        public:
            explicit TempDir(const char *tag) : path_(unique_temp_dir(tag)) {}
            ~TempDir()
            {
                std::error_code ec;
                fs::remove_all(path_, ec);
            }
            TempDir(const TempDir &) = delete;
            TempDir &operator=(const TempDir &) = delete;
            const fs::path &path() const { return path_; }

        private:
            fs::path path_;
        };

        // Validates and renormalizes n rows of width w, in place
        inline void check_probability_rows(std::vector<float> &values, std::size_t n, std::size_t w, const char *file)
        {
            if (values.size() != n * w)
                throw ProtocolError(ProtocolError::Kind::shape_mismatch,
                                    std::string(file) + " holds " + std::to_string(values.size()) +
                                        " values, expected " + std::to_string(n) + " x " + std::to_string(w));
            for (std::size_t r = 0; r < n; ++r)
            {
                double sum = 0.0;
                for (std::size_t c = 0; c < w; ++c)
                {
                    float &v = values[r * w + c];
                    if (!std::isfinite(v) || v < -protocol_negative_tolerance)
                        throw ProtocolError(ProtocolError::Kind::not_normalized,
                                            std::string(file) + " row " + std::to_string(r) +
                                                " has a negative or non-finite entry");
                    v = std::max(v, 0.0f);
                    sum += v;
                }
                if (std::abs(sum - 1.0) > protocol_sum_tolerance)
                    throw ProtocolError(ProtocolError::Kind::not_normalized,
                                        std::string(file) + " row " + std::to_string(r) + " sums to " +
                                            std::to_string(sum));
            }
        }

        inline std::vector<double> normalized_row(std::span<const float> row)
        {
            double sum = 0.0;
            for (float v : row)
                sum += v;
            std::vector<double> out(row.size());
            for (std::size_t i = 0; i < row.size(); ++i)
                out[i] = double(row[i]) / sum;
            return out;
        }
    }

    // Runs `command` on a request directory and returns the validated response.
    // `request` supplies the probe metadata; its n_samples and features are replaced by the batch.
    inline std::vector<ProbabilityPair> external_predict(const std::string &command, DatasetManifest request,
                                                         std::span<const PredictionRequest> batch)
    {
        const std::size_t n = batch.size();
        request.n_samples = n;
        request.source_indices.clear();
        std::vector<float> features;
        features.reserve(n * request.q * 2);
        for (const auto &b : batch)
        {
            if (b.features.size() != request.q)
                throw DomainError("external_predict: feature length " + std::to_string(b.features.size()) +
                                  " does not match Q = " + std::to_string(request.q));
            for (const cplx &v : b.features)
            {
                features.push_back(float(v.real()));
                features.push_back(float(v.imag()));
            }
        }

        detail::TempDir req("request"), resp("response");
        auto mj = manifest_to_json(request);
        mj["request"] = true;
        mj.erase("labels");
        write_tensor<float>(req.path() / "features.bin", features);
        write_file_atomic(req.path() / "manifest.json", mj.dump(2) + "\n");

        const std::string cmd = command + " " + detail::shell_quote(req.path().string()) + " " +
                                detail::shell_quote(resp.path().string());
        const int status = std::system(cmd.c_str());
        if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
            throw ProtocolError(ProtocolError::Kind::nonzero_exit,
                                "predictor command exited with status " +
                                    std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : status));

        auto load = [&](const char *name, std::size_t width)
        {
            const fs::path p = resp.path() / name;
            if (!fs::exists(p))
                throw ProtocolError(ProtocolError::Kind::missing_file, std::string(name) + " was not written");
            std::vector<float> v;
            try
            {
                v = decode_le<float>(read_file(p), name);
            }
            catch (const IoError &e)
            {
                throw ProtocolError(ProtocolError::Kind::shape_mismatch, e.what());
            }
            detail::check_probability_rows(v, n, width, name);
            return v;
        };
        const auto px = load("probs_x.bin", request.s_x);
        const auto py = load("probs_y.bin", request.s_y);

        std::vector<ProbabilityPair> out(n);
        for (std::size_t r = 0; r < n; ++r)
        {
            out[r].p_x = detail::normalized_row(std::span<const float>(px).subspan(r * request.s_x, request.s_x));
            out[r].p_y = detail::normalized_row(std::span<const float>(py).subspan(r * request.s_y, request.s_y));
        }
        return out;
    }

    class ExternalPredictor final : public Predictor
    {
    public:
        ExternalPredictor(std::string command, DatasetManifest request_template)
            : command_(std::move(command)), template_(std::move(request_template)) {}

        std::vector<ProbabilityPair> predict(std::span<const PredictionRequest> batch) const override
        {
            if (batch.empty())
                return {};
            return external_predict(command_, template_, batch);
        }

    private:
        std::string command_;
        DatasetManifest template_;
    };
}

#endif
