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

#include <catch2/catch_amalgamated.hpp>

#include "leonr/geometry.hpp"

#include <cmath>
#include <numbers>

using namespace leonr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent 2-D construction: Earth centre at the origin, satellite on
// the +y axis, terminals on the circle of radius R at the given central
// angle. Ranges and elevations fall out of plain vector algebra, with no
// shared code with the library's closed forms.
struct FlatOracle {
    double r, h;

    double range_at_central_angle(double psi) const
    {
        const double px = r * std::sin(psi);
        const double py = r * std::cos(psi);
        const double dx = -px;
        const double dy = (r + h) - py;
        return std::hypot(dx, dy);
    }

    double elevation_at_central_angle(double psi) const
    {
        const double px = r * std::sin(psi);
        const double py = r * std::cos(psi);
        const double dx = -px;
        const double dy = (r + h) - py;
        const double range = std::hypot(dx, dy);
        // angle of the line of sight above the local horizon = asin(los . up)
        const double up_dot = (dx * px + dy * py) / (r * range);
        return std::asin(up_dot);
    }

    // invert elevation -> central angle by bisection (monotone on [0, pi/2])
    double central_angle_at_elevation(double elevation) const
    {
        double lo = 0.0, hi = kPi / 2.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (elevation_at_central_angle(mid) > elevation ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
};

} // namespace

TEST_CASE("angular velocity of the reference orbit")
{
    const ScenarioConfig cfg;
    CHECK_THAT(angular_velocity(cfg), WithinRel(9.583828170175941e-4, 1e-12));
    CHECK_THAT(angular_velocity(cfg) * cfg.constants.earth_radius_m,
               WithinRel(6105.8569272190925, 1e-12));
}

TEST_CASE("angular velocity falls monotonically with altitude")
{
    ScenarioConfig cfg;
    double prev = angular_velocity(cfg);
    for (double h : {2e6, 5e6, 2e7, 1e8, 1e10}) {
        cfg.altitude_m = h;
        const double w = angular_velocity(cfg);
        CHECK(w < prev);
        prev = w;
    }
    CHECK(prev < 1e-7);  // -> 0 in the limit
}

TEST_CASE("slant range at zenith equals the altitude")
{
    const ScenarioConfig cfg;
    CHECK_THAT(slant_range(cfg, kPi / 2.0), WithinRel(1.2e6, 1e-12));
}

TEST_CASE("slant range at the minimum elevation")
{
    const ScenarioConfig cfg;
    const double d = slant_range(cfg, kPi / 4.0);
    CHECK_THAT(d, WithinRel(1.5798579865321936e6, 1e-12));
    CHECK_THAT(d, WithinAbs(1580e3, 2e3));
}

TEST_CASE("slant range satisfies its defining equation")
{
    const ScenarioConfig cfg;
    const double r = cfg.constants.earth_radius_m;
    const double rh = r + cfg.altitude_m;
    for (double deg : {5.0, 30.0, 45.0, 60.0, 89.0, 90.0}) {
        const double theta = deg * kPi / 180.0;
        const double d = slant_range(cfg, theta);
        const double lhs = rh * rh - r * r - d * d;
        const double rhs = 2.0 * r * d * std::sin(theta);
        CAPTURE(deg);
        CHECK(std::fabs(lhs - rhs) / (rh * rh - r * r) < 1e-6);
    }
}

TEST_CASE("slant range rejects out-of-domain elevations")
{
    const ScenarioConfig cfg;
    CHECK_THROWS_AS(slant_range(cfg, 0.0), std::domain_error);
    CHECK_THROWS_AS(slant_range(cfg, -0.1), std::domain_error);
    CHECK_THROWS_AS(slant_range(cfg, kPi / 2.0 + 0.01), std::domain_error);
}

TEST_CASE("slant range is strictly decreasing in elevation and stays bracketed")
{
    const ScenarioConfig cfg;
    const double near_horizon = slant_range(cfg, 1e-6);
    double prev = near_horizon + 1.0;
    for (double deg = 0.5; deg <= 90.0; deg += 0.5) {
        const double d = slant_range(cfg, deg * kPi / 180.0);
        CAPTURE(deg);
        CHECK(d < prev);
        CHECK(d >= cfg.altitude_m);
        CHECK(d <= near_horizon);
        prev = d;
    }
}

TEST_CASE("differential distance across the reference beam")
{
    const ScenarioConfig cfg;
    const DifferentialGeometry g = differential_distance(cfg);

    CHECK_THAT(g.d1_m, WithinAbs(1580e3, 2e3));
    CHECK_THAT(g.d2_m, WithinAbs(1372e3, 10e3));
    CHECK_THAT(g.differential_m, WithinAbs(208e3, 10e3));

    // frozen values for regression (independent derivation)
    CHECK_THAT(g.d1_m, WithinRel(1.5798579865321936e6, 1e-12));
    CHECK_THAT(g.d2_m, WithinRel(1.378992328504025e6, 1e-12));

    CHECK(g.d1_m >= g.d2_m);
    CHECK(g.differential_m == g.d1_m - g.d2_m);
}

TEST_CASE("coincident relay nodes have zero differential")
{
    ScenarioConfig cfg;
    cfg.beam_diameter_m = 0.0;
    CHECK(differential_distance(cfg).differential_m == 0.0);
}

TEST_CASE("a beam wider than the ground arc is rejected")
{
    ScenarioConfig cfg;
    cfg.beam_diameter_m = 1e7;
    CHECK_THROWS_AS(differential_distance(cfg), std::domain_error);
}

TEST_CASE("differential construction matches the vector oracle")
{
    const FlatOracle oracle{6.371e6, 1.2e6};
    for (double min_elev_deg : {45.0, 55.0, 70.0}) {
        for (double beam : {1e5, 3.2e5, 5e5}) {
            ScenarioConfig cfg;
            cfg.min_elevation_rad = min_elev_deg * kPi / 180.0;
            cfg.beam_diameter_m = beam;

            const double psi1 = oracle.central_angle_at_elevation(cfg.min_elevation_rad);
            const double psi2 = psi1 - beam / oracle.r;
            CAPTURE(min_elev_deg, beam);
            if (psi2 < 0.0) {  // beam wider than the ground arc
                CHECK_THROWS_AS(differential_distance(cfg), std::domain_error);
                continue;
            }
            const DifferentialGeometry g = differential_distance(cfg);
            CHECK_THAT(g.d1_m, WithinRel(oracle.range_at_central_angle(psi1), 1e-9));
            CHECK_THAT(g.d2_m, WithinRel(oracle.range_at_central_angle(psi2), 1e-9));
        }
    }
}

TEST_CASE("solve_geometry reports a consistent ground arc")
{
    const ScenarioConfig cfg;
    const FlatOracle oracle{cfg.constants.earth_radius_m, cfg.altitude_m};
    const GeometrySolution g = solve_geometry(cfg, cfg.min_elevation_rad);
    const double psi = g.ground_arc_m / cfg.constants.earth_radius_m;
    CHECK_THAT(oracle.elevation_at_central_angle(psi), WithinAbs(cfg.min_elevation_rad, 1e-9));
    CHECK_THAT(g.slant_range_m, WithinRel(oracle.range_at_central_angle(psi), 1e-9));
}

TEST_CASE("differential grows strictly with the beam diameter")
{
    ScenarioConfig cfg;
    double prev = -1.0;
    for (double beam = 0.0; beam <= 6e5; beam += 5e4) {
        cfg.beam_diameter_m = beam;
        const double diff = differential_distance(cfg).differential_m;
        CHECK(diff > prev);
        prev = diff;
    }
}

TEST_CASE("visibility vanishes when only zenith counts")
{
    ScenarioConfig cfg;
    cfg.min_elevation_rad = kPi / 2.0;
    CHECK_THAT(visibility_pass_duration(cfg), WithinAbs(0.0, 1e-9));
}

TEST_CASE("visibility duration matches a millisecond time-stepping oracle")
{
    const ScenarioConfig cfg;
    const double duration = visibility_pass_duration(cfg);

    // march the satellite from zenith at 1 ms steps until it drops below the
    // minimum elevation; the pass is symmetric around zenith
    const FlatOracle oracle{cfg.constants.earth_radius_m, cfg.altitude_m};
    const double w = angular_velocity(cfg);
    double t = 0.0;
    while (oracle.elevation_at_central_angle(w * t) >= cfg.min_elevation_rad)
        t += 1e-3;
    const double stepped = 2.0 * (t - 1e-3);

    CHECK_THAT(duration, WithinRel(stepped, 1e-2));
    CHECK_THAT(duration, WithinRel(309.0504863991955, 1e-9));  // frozen
}

TEST_CASE("visibility duration shrinks as the elevation mask rises")
{
    ScenarioConfig cfg;
    double prev = 1e9;
    for (double deg = 45.0; deg < 90.0; deg += 5.0) {
        cfg.min_elevation_rad = deg * kPi / 180.0;
        const double d = visibility_pass_duration(cfg);
        CHECK(d < prev);
        prev = d;
    }
}
