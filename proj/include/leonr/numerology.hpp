// SPDX-License-Identifier: Apache-2.0
//
// leonr - 5G NR feasibility toolkit for LEO satellite backhaul
// Copyright (C) 2026 leonr contributors
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

#pragma once

#include "leonr/impairments.hpp"
#include "leonr/scenario.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

// NR subcarrier-spacing grid and the frequency-offset budget it buys.

namespace leonr {

/// Fraction of the subcarrier spacing a receiver tolerates as carrier
/// frequency offset. The LTE anchor is 950 Hz on a 15 kHz grid; the linear
/// scaling to wider spacings is a model assumption, so the ratio stays a
/// parameter everywhere it is used.
inline constexpr double kDefaultDopplerToleranceRatio = 0.063;

/// One row of the subcarrier-spacing grid with its Doppler budget and the
/// satellite position error that budget tolerates.
struct NumerologyEntry
{
    int index_n = 0;                    // scs = 15 kHz * 2^n
    double scs_hz = 0.0;
    double tolerated_doppler_hz = 0.0;
    double max_position_error_m = 0.0;
};

/// Subcarrier spacing of grid index n: 15 kHz * 2^n.
inline double scs_from_index(int n)
{
    if (n < 0)
        throw std::domain_error("scs_from_index: index must be >= 0");
    return 15e3 * std::exp2(n);
}

/// Carrier frequency offset a receiver on the given spacing tolerates.
inline double tolerated_doppler(double scs_hz, double ratio = kDefaultDopplerToleranceRatio)
{
    if (!(scs_hz > 0.0))
        throw std::domain_error("tolerated_doppler: scs must be > 0");
    return ratio * scs_hz;
}

/// Largest satellite position error whose residual Doppler stays within the
/// spacing's budget. Evaluated at zenith, where residual Doppler peaks for
/// a fixed error, and bisected to 1 m.
inline double max_position_error(const ScenarioConfig &cfg, double scs_hz,
                                 double ratio = kDefaultDopplerToleranceRatio)
{
    const double budget = tolerated_doppler(scs_hz, ratio);
    const double zenith = std::numbers::pi / 2.0;
    const auto residual = [&](double error_m) {
        return residual_doppler(cfg, zenith, error_m).residual_doppler_hz;
    };

    double hi = 1e3;
    while (residual(hi) <= budget) {
        hi *= 2.0;
        if (hi > 1e12)
            throw std::domain_error("max_position_error: budget exceeds the worst-case "
                                    "Doppler; no finite bound");
    }
    double lo = 0.0;  // residual(0) == 0, always within budget
    while (hi - lo > 1.0) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) <= budget ? lo : hi) = mid;
    }
    return lo;
}

/// The spacing grid from index 0 up to max_index inclusive, each row with
/// its Doppler budget and tolerated position error for this scenario.
inline std::vector<NumerologyEntry> numerology_table(const ScenarioConfig &cfg, int max_index = 3,
                                                     double ratio = kDefaultDopplerToleranceRatio)
{
    if (max_index < 0)
        throw std::domain_error("numerology_table: max_index must be >= 0");
    std::vector<NumerologyEntry> table;
    table.reserve(static_cast<std::size_t>(max_index) + 1);
    for (int n = 0; n <= max_index; ++n) {
        NumerologyEntry e;
        e.index_n = n;
        e.scs_hz = scs_from_index(n);
        e.tolerated_doppler_hz = tolerated_doppler(e.scs_hz, ratio);
        e.max_position_error_m = max_position_error(cfg, e.scs_hz, ratio);
        table.push_back(e);
    }
    return table;
}

/// Smallest entry whose Doppler budget covers the requirement. The list
/// must be sorted by spacing. Throws if even the widest spacing falls short.
inline const NumerologyEntry &select_numerology(double required_doppler_hz,
                                                std::span<const NumerologyEntry> available)
{
    if (available.empty())
        throw std::domain_error("select_numerology: no entries available");
    for (const NumerologyEntry &entry : available)
        if (entry.tolerated_doppler_hz >= required_doppler_hz)
            return entry;
    throw std::domain_error("select_numerology: no numerology satisfies requirement");
}

} // namespace leonr
