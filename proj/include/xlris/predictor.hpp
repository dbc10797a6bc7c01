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

#ifndef XLRIS_PREDICTOR_HPP
#define XLRIS_PREDICTOR_HPP

#include "codebook.hpp"
#include "errors.hpp"
#include "linalg.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xlris
{
    // Per-axis class distributions for the optimal codeword position
    struct ProbabilityPair
    {
        std::vector<double> p_x; // length S_x
        std::vector<double> p_y; // length S_y
    };

    inline constexpr double probability_sum_tolerance = 1e-5;

    namespace detail
    {
        inline void check_distribution(std::span<const double> p, std::size_t expected, const char *axis)
        {
            if (p.size() != expected)
                throw PredictorContractError(std::string("predictor ") + axis + "-distribution has length " +
                                             std::to_string(p.size()) + ", expected " + std::to_string(expected));
            double sum = 0.0;
            for (double v : p)
            {
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw PredictorContractError(std::string("predictor ") + axis +
                                                 "-distribution has a negative or non-finite entry");
                sum += v;
            }
            if (std::abs(sum - 1.0) > probability_sum_tolerance)
                throw PredictorContractError(std::string("predictor ") + axis + "-distribution sums to " +
                                             std::to_string(sum));
        }
    }

    inline void validate(const ProbabilityPair &p, std::size_t count_x, std::size_t count_y)
    {
        detail::check_distribution(p.p_x, count_x, "x");
        detail::check_distribution(p.p_y, count_y, "y");
    }

    // One row of a prediction batch. `label_hint` carries the true flat index for test doubles;
    // real predictors must ignore it.
    struct PredictionRequest
    {
        std::span<const cplx> features;
        std::optional<std::size_t> label_hint;
    };

    // Maps received probe vectors to per-axis probability pairs. Implementations must be
    // stateless: concurrent predict() calls are allowed.
    class Predictor
    {
    public:
        virtual ~Predictor() = default;

        virtual std::vector<ProbabilityPair> predict(std::span<const PredictionRequest> batch) const = 0;

        ProbabilityPair predict_one(std::span<const cplx> features, std::optional<std::size_t> label_hint = {}) const
        {
            const PredictionRequest req{features, label_hint};
            auto out = predict(std::span<const PredictionRequest>(&req, 1));
            if (out.size() != 1)
                throw PredictorContractError("predictor returned " + std::to_string(out.size()) + " rows for 1 request");
            return std::move(out.front());
        }
    };

    // Test double: probability 1 at the true (s_x, s_y)
    class OneHotOraclePredictor final : public Predictor
    {
    public:
        OneHotOraclePredictor(std::size_t count_x, std::size_t count_y) : count_x_(count_x), count_y_(count_y) {}

        std::vector<ProbabilityPair> predict(std::span<const PredictionRequest> batch) const override
        {
            std::vector<ProbabilityPair> out;
            out.reserve(batch.size());
            for (const auto &req : batch)
            {
                if (!req.label_hint)
                    throw PredictorContractError("one-hot oracle needs the true label");
                const auto [sx, sy] = index_pair(*req.label_hint, count_x_, count_y_);
                ProbabilityPair p{std::vector<double>(count_x_, 0.0), std::vector<double>(count_y_, 0.0)};
                p.p_x[sx - 1] = 1.0;
                p.p_y[sy - 1] = 1.0;
                out.push_back(std::move(p));
            }
            return out;
        }

    private:
        std::size_t count_x_, count_y_;
    };

    class UniformPredictor final : public Predictor
    {
    public:
        UniformPredictor(std::size_t count_x, std::size_t count_y) : count_x_(count_x), count_y_(count_y) {}

        std::vector<ProbabilityPair> predict(std::span<const PredictionRequest> batch) const override
        {
            const ProbabilityPair p{std::vector<double>(count_x_, 1.0 / double(count_x_)),
                                    std::vector<double>(count_y_, 1.0 / double(count_y_))};
            return std::vector<ProbabilityPair>(batch.size(), p);
        }

    private:
        std::size_t count_x_, count_y_;
    };
}

#endif
