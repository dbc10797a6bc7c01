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

#ifndef XLRIS_RNG_HPP
#define XLRIS_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace xlris
{
    // Random streams are fully specified so that other implementations can reproduce them:
    //  - core generator: std::mt19937_64 (its output sequence is fixed by the C++ standard)
    //  - stream seeding: seed_i = splitmix64(splitmix64(base) ^ splitmix64(index + golden))
    //  - uniform doubles: top 53 bits of one 64-bit draw, scaled by 2^-53, in [0, 1)
    //  - complex normals: one Box-Muller pair per draw (radius from u1, angle from u2)
    // The standard <random> distributions are not used because their algorithms are
    // implementation-defined.

    inline constexpr const char *rng_generator_name = "mt19937_64";
    inline constexpr const char *rng_mixer_name =
        "splitmix64(splitmix64(seed) ^ splitmix64(index + 0x9E3779B97F4A7C15))";

    constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // 128-bit (base, index) -> 64-bit stream seed
    constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept
    {
        return splitmix64(splitmix64(base) ^ splitmix64(index + 0x9E3779B97F4A7C15ULL));
    }

    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        static Rng derived(std::uint64_t base, std::uint64_t index) { return Rng(derive_seed(base, index)); }

        std::uint64_t next_u64() { return engine_(); }

        // [0, 1)
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        // [lo, hi)
        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        // Unbiased integer in [0, n) by rejection; n > 0
        std::uint64_t below(std::uint64_t n)
        {
            const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
            std::uint64_t x;
            do
                x = engine_();
            while (x >= limit);
            return x % n;
        }

        // CN(0, variance): real and imaginary parts each N(0, variance / 2)
        std::complex<double> complex_normal(double variance)
        {
            const double u1 = 1.0 - uniform(); // (0, 1]
            const double u2 = uniform();
            const double r = std::sqrt(-variance * std::log(u1));
            const double a = 2.0 * std::numbers::pi * u2;
            return {r * std::cos(a), r * std::sin(a)};
        }

    private:
        std::mt19937_64 engine_;
    };
}

#endif
