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

#ifndef XLRIS_METRICS_HPP
#define XLRIS_METRICS_HPP

#include "channel.hpp"
#include "errors.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

// Link metrics. All of them are evaluated against the strongest-path steering vector only.

namespace xlris
{
    struct TrialMetrics
    {
        double achievable_rate = 0.0; // bits/s/Hz
        double normalized_gain = 0.0; // in [0, 1]
        double effective_rate = 0.0;  // bits/s/Hz
        std::size_t probes_used = 0;
    };

    // |w^T c|^2 against the strongest path
    inline double beam_gain(std::span<const cplx> codeword, const ChannelRealization &chan)
    {
        return std::norm(dot_t(codeword, chan.strongest().steering));
    }

    // log2(1 + |w^T c|^2 / sigma2). sigma2 = 0 is accepted only as the noiseless limit (+inf or 0).
    inline double achievable_rate(std::span<const cplx> codeword, const ChannelRealization &chan, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw DomainError("achievable_rate: noise variance must be positive");
        return std::log2(1.0 + beam_gain(codeword, chan) / sigma2);
    }

    // |w_chosen^T c|^2 / |w_opt^T c|^2
    inline double normalized_gain(std::span<const cplx> chosen, std::span<const cplx> optimal,
                                  const ChannelRealization &chan)
    {
        const double denom = beam_gain(optimal, chan);
        if (!(denom > 0.0))
            throw DomainError("normalized_gain: optimal codeword has zero gain");
        return beam_gain(chosen, chan) / denom;
    }

    // (1 - T_tra / T_tot) * rate
    inline double effective_rate(double rate, double training_slots, double total_slots)
    {
        if (!(total_slots > 0.0))
            throw DomainError("effective_rate: total slot count must be positive");
        if (!(training_slots >= 0.0) || training_slots > total_slots)
            throw DomainError("effective_rate: training slots must lie in [0, T_tot]");
        return (1.0 - training_slots / total_slots) * rate;
    }

    // All three metrics for one trial. sigma2 = 0 reports infinite rates.
    inline TrialMetrics trial_metrics(std::span<const cplx> chosen, std::span<const cplx> optimal,
                                      const ChannelRealization &chan, double sigma2, std::size_t probes_used,
                                      double total_slots)
    {
        TrialMetrics m;
        m.probes_used = probes_used;
        m.normalized_gain = normalized_gain(chosen, optimal, chan);
        if (sigma2 > 0.0)
            m.achievable_rate = achievable_rate(chosen, chan, sigma2);
        else
            m.achievable_rate = beam_gain(chosen, chan) > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        // Overhead beyond the coherence interval leaves no time for data
        const double t_tra = std::min(double(probes_used), total_slots);
        m.effective_rate = t_tra == total_slots ? 0.0 : effective_rate(m.achievable_rate, t_tra, total_slots);
        return m;
    }
}

#endif
