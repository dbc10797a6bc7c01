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

#ifndef XLRIS_PARALLEL_HPP
#define XLRIS_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace xlris
{
    // Runs body(i) for i in [0, n) on contiguous chunks. Results must be written by index;
    // the first exception (lowest chunk) is rethrown after all workers finish.
    template <typename Body>
    void parallel_for(std::size_t n, Body &&body, std::size_t max_threads = 0)
    {
        std::size_t workers = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
        workers = std::min(workers, n);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                body(i);
            return;
        }

        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
        {
            pool.emplace_back([&, w]
                              {
                const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
                try
                {
                    for (std::size_t i = lo; i < hi; ++i)
                        body(i);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                } });
        }
        for (auto &t : pool)
            t.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}

#endif
