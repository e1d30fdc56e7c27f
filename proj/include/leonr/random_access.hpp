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

#include "leonr/scenario.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

// Timing-budget feasibility of the two random-access stages over the
// satellite backhaul: UE-to-RN access (terminates at the relay) and the RN
// attach procedure (every step crosses the satellite link).

namespace leonr {

/// Random-access preamble timing. The guard time bounds the supported cell
/// radius: a preamble arriving from the cell edge must still fall inside
/// its slot, so radius = guard * c / 2.
struct PreambleFormat
{
    std::string name;
    double cp_duration_s = 0.0;
    double sequence_duration_s = 0.0;
    double guard_time_s = 0.0;
    double max_cell_radius_m = 0.0;
};

/// Builds a format with the radius derived from the guard time.
inline PreambleFormat make_preamble_format(std::string name, double cp_s, double sequence_s,
                                           double guard_s,
                                           double light_speed_ms = PhysicalConstants{}.light_speed_ms)
{
    if (cp_s < 0.0 || sequence_s < 0.0 || guard_s < 0.0)
        throw std::domain_error("make_preamble_format: durations must be >= 0");
    PreambleFormat f;
    f.name = std::move(name);
    f.cp_duration_s = cp_s;
    f.sequence_duration_s = sequence_s;
    f.guard_time_s = guard_s;
    f.max_cell_radius_m = guard_s * light_speed_ms / 2.0;
    return f;
}

/// The four LTE preamble formats. CP and sequence lengths are the nominal
/// LTE values (multiples of 1/30.72 MHz). Format 3's guard time is pinned
/// to a 100 km cell radius, the commonly quoted coverage of the longest
/// format; the guard times of formats 0-2 are the slot remainder and should
/// be treated as placeholders rather than authoritative coverage figures.
inline const std::array<PreambleFormat, 4> &lte_preamble_formats()
{
    static const std::array<PreambleFormat, 4> formats = [] {
        constexpr double ts = 1.0 / 30.72e6;
        const double c = PhysicalConstants{}.light_speed_ms;
        return std::array<PreambleFormat, 4>{
            make_preamble_format("0", 3168 * ts, 24576 * ts, 1e-3 - (3168 + 24576) * ts, c),
            make_preamble_format("1", 21024 * ts, 24576 * ts, 2e-3 - (21024 + 24576) * ts, c),
            make_preamble_format("2", 6240 * ts, 49152 * ts, 2e-3 - (6240 + 49152) * ts, c),
            make_preamble_format("3", 21024 * ts, 49152 * ts, 2.0 * 100e3 / c, c),
        };
    }();
    return formats;
}

/// Random-access supervision timers.
struct RaTimers
{
    double rar_window_s = 0.0;        // wait for the random-access response
    double contention_timer_s = 0.0;  // wait for contention resolution
};

enum class RaStage
{
    ue_ra,     // UE to RN, steps 3-4 cross the satellite link
    rn_attach  // RN to DgNB, every step crosses the satellite link
};

/// One failed budget: the name of the timer or guard budget, what the link
/// requires, and what the configuration provides (both in seconds).
struct BudgetViolation
{
    std::string budget;
    double required_s = 0.0;
    double available_s = 0.0;
};

/// Feasibility record for one random-access stage. feasible is true exactly
/// when violations is empty.
struct RaVerdict
{
    RaStage stage = RaStage::ue_ra;
    bool feasible = false;
    std::vector<BudgetViolation> violations;
};

/// Timing advance compensating a round-trip path difference: 2 d / c.
inline double timing_advance(double differential_distance_m,
                             double light_speed_ms = PhysicalConstants{}.light_speed_ms)
{
    if (differential_distance_m < 0.0)
        throw std::domain_error("timing_advance: distance must be >= 0");
    return 2.0 * differential_distance_m / light_speed_ms;
}

/// UE random access toward its RN. The preamble exchange terminates at the
/// relay, so only contention resolution (which reaches the core network
/// through the satellite) must outlast the satellite round trip. The RAR
/// window is not checked at this stage.
inline RaVerdict check_ue_ra(const RaTimers &timers, double satellite_rtt_s)
{
    RaVerdict v;
    v.stage = RaStage::ue_ra;
    if (!(timers.contention_timer_s > satellite_rtt_s))
        v.violations.push_back({"contention_timer", satellite_rtt_s, timers.contention_timer_s});
    v.feasible = v.violations.empty();
    return v;
}

/// RN attach toward the DgNB. The satellite round trip sits in every step:
/// both timers must exceed it, and the slant-range differential across the
/// beam must fit the preamble's guard budget.
inline RaVerdict check_rn_attach(const RaTimers &timers, double satellite_rtt_s,
                                 const PreambleFormat &preamble, double differential_distance_m)
{
    RaVerdict v;
    v.stage = RaStage::rn_attach;
    if (!(timers.rar_window_s > satellite_rtt_s))
        v.violations.push_back({"rar_window", satellite_rtt_s, timers.rar_window_s});
    if (!(timers.contention_timer_s > satellite_rtt_s))
        v.violations.push_back({"contention_timer", satellite_rtt_s, timers.contention_timer_s});
    if (!(differential_distance_m <= preamble.max_cell_radius_m))
        v.violations.push_back({"timing_advance", timing_advance(differential_distance_m),
                                preamble.guard_time_s});
    v.feasible = v.violations.empty();
    return v;
}

/// RAR window that survives the given round trip with some headroom.
inline double required_rar_window(double satellite_rtt_s, double margin_s)
{
    if (margin_s < 0.0)
        throw std::domain_error("required_rar_window: margin must be >= 0");
    return satellite_rtt_s + margin_s;
}

/// Outcome of pre-compensating the timing advance from a satellite position
/// estimate before sending the preamble.
struct GnssTaResult
{
    double residual_ta_s = 0.0;
    bool feasible = false;
};

/// Pre-compensated timing advance: the estimated distance is removed before
/// transmission, so only the estimation error reaches the guard budget. The
/// original differential no longer matters; feasibility needs the error
/// itself to fit the cell radius.
inline GnssTaResult gnss_assisted_ta(double differential_distance_m, double position_error_m,
                                     const PreambleFormat &preamble)
{
    if (differential_distance_m < 0.0 || position_error_m < 0.0)
        throw std::domain_error("gnss_assisted_ta: inputs must be >= 0");
    GnssTaResult r;
    r.residual_ta_s = timing_advance(position_error_m);
    r.feasible = position_error_m <= preamble.max_cell_radius_m;
    return r;
}

} // namespace leonr
