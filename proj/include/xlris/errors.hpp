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

#ifndef XLRIS_ERRORS_HPP
#define XLRIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xlris
{
    // Input outside the mathematical domain of an operation (bad index, length mismatch, ...)
    class DomainError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Inconsistent or unusable system / experiment configuration
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A predictor returned something that is not a valid probability pair
    class PredictorContractError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Dataset / tensor file could not be read or written
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Failures of the external predictor process protocol. Each failure mode has its own kind.
    class ProtocolError : public PredictorContractError
    {
    public:
        enum class Kind
        {
            nonzero_exit,
            missing_file,
            shape_mismatch,
            not_normalized,
        };

        ProtocolError(Kind kind, const std::string &what)
            : PredictorContractError(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

        Kind kind() const noexcept { return kind_; }

        static constexpr const char *kind_name(Kind k) noexcept
        {
            switch (k)
            {
            case Kind::nonzero_exit:
                return "nonzero exit";
            case Kind::missing_file:
                return "missing file";
            case Kind::shape_mismatch:
                return "shape mismatch";
            case Kind::not_normalized:
                return "not normalized";
            }
            return "protocol error";
        }

    private:
        Kind kind_;
    };
}

#endif
