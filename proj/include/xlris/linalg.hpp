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

#ifndef XLRIS_LINALG_HPP
#define XLRIS_LINALG_HPP

#include "errors.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace xlris
{
    using cplx = std::complex<double>;
    using ComplexVector = std::vector<cplx>;

    // Bilinear product a^T b (no conjugation)
    inline cplx dot_t(std::span<const cplx> a, std::span<const cplx> b)
    {
        if (a.size() != b.size())
            throw DomainError("dot_t: length mismatch");
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            const double ar = a[i].real(), ai = a[i].imag();
            const double br = b[i].real(), bi = b[i].imag();
            re += ar * br - ai * bi;
            im += ar * bi + ai * br;
        }
        return {re, im};
    }

    inline ComplexVector conj(std::span<const cplx> v)
    {
        ComplexVector out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i] = std::conj(v[i]);
        return out;
    }

    // Dense row-major stack of equal-length complex vectors
    class CodewordMatrix
    {
    public:
        CodewordMatrix() = default;
        CodewordMatrix(std::size_t rows, std::size_t length) : rows_(rows), length_(length), data_(rows * length) {}

        std::size_t rows() const { return rows_; }
        std::size_t length() const { return length_; }
        bool empty() const { return rows_ == 0; }

        std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * length_, length_}; }
        std::span<cplx> row(std::size_t r) { return {data_.data() + r * length_, length_}; }

        void set_row(std::size_t r, std::span<const cplx> v)
        {
            if (v.size() != length_)
                throw DomainError("CodewordMatrix::set_row: length mismatch");
            std::copy(v.begin(), v.end(), row(r).begin());
        }

        std::span<const cplx> data() const { return data_; }

    private:
        std::size_t rows_ = 0, length_ = 0;
        std::vector<cplx> data_;
    };
}

#endif
