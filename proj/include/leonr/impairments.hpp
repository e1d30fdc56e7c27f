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

#include "leonr/geometry.hpp"
#include "leonr/scenario.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Propagation delay and Doppler models of the satellite backhaul, plus the
// residual Doppler left after compensating with an imperfect satellite
// position estimate.

namespace leonr {

/// Round-trip propagation budget over the relay backhaul. Each component is
/// one round-trip leg; the legs always sum to round_trip_s exactly.
struct DelayBudget
{
    double one_way_s = 0.0;
    double round_trip_s = 0.0;
    std::vector<std::pair<std::string, double>> components;  // (leg name, round-trip seconds)
};

/// Doppler at one (elevation, carrier, position-error) point.
struct DopplerResult
{
    double carrier_hz = 0.0;
    double elevation_rad = 0.0;
    double position_error_m = 0.0;
    double true_doppler_hz = 0.0;       // from the true elevation
    double estimated_doppler_hz = 0.0;  // from the apparent elevation under the position error
    double residual_doppler_hz = 0.0;   // |true - estimated|
};

/// Round-trip delay of the RN - satellite - DgNB chain. The satellite-DgNB
/// leg is the altitude plus any configured extra feeder delay; the UE-RN
/// hop is negligible and not modeled.
inline DelayBudget round_trip_time(const ScenarioConfig &cfg)
{
    const double c = cfg.constants.light_speed_ms;
    const double rn_sat = 2.0 * cfg.altitude_m / c;
    const double sat_dgnb = 2.0 * cfg.altitude_m / c + 2.0 * cfg.feeder_extra_delay_s;

    DelayBudget b;
    b.components.emplace_back("rn_satellite", rn_sat);
    b.components.emplace_back("satellite_dgnb", sat_dgnb);
    b.round_trip_s = rn_sat + sat_dgnb;
    b.one_way_s = b.round_trip_s / 2.0;
    return b;
}

/// Doppler seen by a terminal moving at the given speed relative to a fixed
/// station: f = v * f_c * cos(angle) / c.
inline double ue_doppler(double speed_ms, double carrier_hz, double angle_rad,
                         double light_speed_ms = PhysicalConstants{}.light_speed_ms)
{
    if (speed_ms < 0.0)
        throw std::domain_error("ue_doppler: speed must be >= 0");
    return speed_ms * carrier_hz * std::cos(angle_rad) / light_speed_ms;
}

/// Doppler on the satellite link, caused solely by the satellite's motion:
/// f = f_c * w * R * cos(elevation) / c. Elevation must lie in [0, pi/2].
inline double sat_doppler(const ScenarioConfig &cfg, double elevation_rad)
{
    if (!(elevation_rad >= 0.0) || !(elevation_rad <= std::numbers::pi / 2.0))
        throw std::domain_error("sat_doppler: elevation must lie in [0, pi/2]");
    return cfg.carrier_hz * angular_velocity(cfg) * cfg.constants.earth_radius_m *
           std::cos(elevation_rad) / cfg.constants.light_speed_ms;
}

/// Elevation the terminal ascribes to the satellite when its position
/// estimate is displaced by position_error_m along the ground projection of
/// the line of sight:
///
///   cos(e') = (d cos(e) + r) / sqrt(d^2 + r^2 + 2 r d cos(e))
///
/// Returns the true elevation exactly when the error is zero.
inline double apparent_elevation(double slant_range_m, double elevation_rad,
                                 double position_error_m)
{
    if (!(slant_range_m > 0.0))
        throw std::domain_error("apparent_elevation: slant range must be > 0");
    if (position_error_m < 0.0)
        throw std::domain_error("apparent_elevation: position error must be >= 0");
    if (position_error_m == 0.0)
        return elevation_rad;
    const double d = slant_range_m;
    const double r = position_error_m;
    const double ce = std::cos(elevation_rad);
    const double cos_apparent =
        (d * ce + r) / std::sqrt(d * d + r * r + 2.0 * r * d * ce);
    return std::acos(std::fmin(1.0, std::fmax(-1.0, cos_apparent)));
}

/// Doppler left after compensating with a satellite position estimate that
/// is off by position_error_m. Both shifts are evaluated at the same time
/// instant; the residual is reported as a magnitude.
/// Elevation must lie in [min_elevation, pi/2].
inline DopplerResult residual_doppler(const ScenarioConfig &cfg, double elevation_rad,
                                      double position_error_m)
{
    if (!(elevation_rad >= cfg.min_elevation_rad) ||
        !(elevation_rad <= std::numbers::pi / 2.0))
        throw std::domain_error("residual_doppler: elevation must lie in [min_elevation, pi/2]");

    const double range = slant_range(cfg, elevation_rad);
    const double apparent = apparent_elevation(range, elevation_rad, position_error_m);

    DopplerResult res;
    res.carrier_hz = cfg.carrier_hz;
    res.elevation_rad = elevation_rad;
    res.position_error_m = position_error_m;
    res.true_doppler_hz = sat_doppler(cfg, elevation_rad);
    res.estimated_doppler_hz = sat_doppler(cfg, apparent);
    res.residual_doppler_hz = std::fabs(res.true_doppler_hz - res.estimated_doppler_hz);
    return res;
}

/// Dense evaluation of residual_doppler over the Cartesian product of the
/// two grids. Output is row-major: all position errors for the first
/// elevation, then the next elevation, and so on.
inline std::vector<DopplerResult> residual_doppler_surface(const ScenarioConfig &cfg,
                                                           std::span<const double> elevations_rad,
                                                           std::span<const double> position_errors_m)
{
    if (elevations_rad.empty() || position_errors_m.empty())
        throw std::domain_error("residual_doppler_surface: grids must be non-empty");
    std::vector<DopplerResult> out;
    out.reserve(elevations_rad.size() * position_errors_m.size());
    for (const double elevation : elevations_rad)
        for (const double error : position_errors_m)
            out.push_back(residual_doppler(cfg, elevation, error));
    return out;
}

} // namespace leonr
