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

#include <cmath>
#include <numbers>
#include <stdexcept>

// Circular-orbit ground geometry for a single overhead pass. Earth is a
// sphere, the orbit plane contains the ground terminal, Earth rotation is
// ignored. All functions are pure.

namespace leonr {

/// Line-of-sight solution for one terminal at a given elevation.
struct GeometrySolution
{
    double slant_range_m = 0.0;   // terminal to satellite
    double elevation_rad = 0.0;
    double ground_arc_m = 0.0;    // great-circle distance, sub-satellite point to terminal
};

/// Slant ranges of the two relay nodes at opposite edges of one beam.
struct DifferentialGeometry
{
    double d1_m = 0.0;            // far node (at minimum elevation)
    double d2_m = 0.0;            // near node, one beam diameter closer
    double differential_m = 0.0;  // d1_m - d2_m
};

/// Orbital angular velocity sqrt(mu / (R+h)^3) in rad/s.
inline double angular_velocity(const ScenarioConfig &cfg)
{
    const double r = cfg.constants.earth_radius_m + cfg.altitude_m;
    return std::sqrt(cfg.constants.earth_mu_m3s2 / (r * r * r));
}

/// Terminal-to-satellite distance at a given elevation angle, from the
/// positive root of  d^2 + 2 R sin(e) d - ((R+h)^2 - R^2) = 0.
/// Solved in closed form so results are bit-deterministic.
/// Elevation must lie in (0, pi/2].
inline double slant_range(const ScenarioConfig &cfg, double elevation_rad)
{
    if (!(elevation_rad > 0.0) || !(elevation_rad <= std::numbers::pi / 2.0))
        throw std::domain_error("slant_range: elevation must lie in (0, pi/2]");
    const double r = cfg.constants.earth_radius_m;
    const double h = cfg.altitude_m;
    const double rs = r * std::sin(elevation_rad);
    // (R+h)^2 - R^2 expanded as h^2 + 2Rh to avoid cancellation at small h
    return -rs + std::sqrt(rs * rs + h * h + 2.0 * r * h);
}

namespace detail {

/// Earth-central angle between the sub-satellite point and a terminal
/// seeing the satellite at the given elevation.
inline double central_angle(const ScenarioConfig &cfg, double elevation_rad)
{
    const double ratio = cfg.constants.earth_radius_m /
                         (cfg.constants.earth_radius_m + cfg.altitude_m);
    return std::acos(ratio * std::cos(elevation_rad)) - elevation_rad;
}

} // namespace detail

/// Full line-of-sight solution (range plus ground arc) at one elevation.
inline GeometrySolution solve_geometry(const ScenarioConfig &cfg, double elevation_rad)
{
    GeometrySolution g;
    g.elevation_rad = elevation_rad;
    g.slant_range_m = slant_range(cfg, elevation_rad);
    g.ground_arc_m = cfg.constants.earth_radius_m * detail::central_angle(cfg, elevation_rad);
    return g;
}

/// Worst-case slant-range difference across one beam. The far node sits at
/// the minimum elevation; the near node lies on the same great circle, one
/// beam diameter closer to the sub-satellite point. Throws if the beam is
/// wider than the far node's ground arc.
inline DifferentialGeometry differential_distance(const ScenarioConfig &cfg)
{
    const GeometrySolution far = solve_geometry(cfg, cfg.min_elevation_rad);
    const double near_arc = far.ground_arc_m - cfg.beam_diameter_m;
    if (near_arc < 0.0)
        throw std::domain_error("differential_distance: beam diameter exceeds the ground arc "
                                "at minimum elevation");

    const double r = cfg.constants.earth_radius_m;
    const double rh = r + cfg.altitude_m;
    const double psi = near_arc / r;
    const double d2 = std::sqrt(r * r + rh * rh - 2.0 * r * rh * std::cos(psi));

    DifferentialGeometry out;
    out.d1_m = far.slant_range_m;
    // the law-of-cosines route can land a few ulps above the closed form at
    // zero beam width; the construction guarantees d2 <= d1
    out.d2_m = std::fmin(d2, out.d1_m);
    out.differential_m = out.d1_m - out.d2_m;
    return out;
}

/// Time a terminal sees the satellite above the minimum elevation during an
/// overhead pass: the satellite sweeps the visibility cone's central angle
/// on both sides of zenith at constant angular velocity.
inline double visibility_pass_duration(const ScenarioConfig &cfg)
{
    return 2.0 * detail::central_angle(cfg, cfg.min_elevation_rad) / angular_velocity(cfg);
}

} // namespace leonr
