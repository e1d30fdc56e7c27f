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

#include "leonr/impairments.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace leonr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double deg(double d) { return d * kPi / 180.0; }
} // namespace

TEST_CASE("round trip of the reference backhaul is about 16 ms")
{
    const ScenarioConfig cfg;
    const DelayBudget b = round_trip_time(cfg);
    CHECK_THAT(b.round_trip_s, WithinRel(4.0 * 1.2e6 / 2.99792458e8, 1e-12));
    CHECK_THAT(b.round_trip_s, WithinAbs(16e-3, 0.5e-3));
}

TEST_CASE("zero altitude collapses the delay budget")
{
    ScenarioConfig cfg;
    cfg.altitude_m = 0.0;
    CHECK(round_trip_time(cfg).round_trip_s == 0.0);
}

TEST_CASE("feeder delay enters the round trip twice")
{
    ScenarioConfig cfg;
    const double base = round_trip_time(cfg).round_trip_s;
    cfg.feeder_extra_delay_s = 1e-3;
    CHECK_THAT(round_trip_time(cfg).round_trip_s - base, WithinAbs(2e-3, 1e-12));
}

TEST_CASE("delay components sum to the round trip exactly")
{
    ScenarioConfig cfg;
    cfg.feeder_extra_delay_s = 3.7e-4;
    const DelayBudget b = round_trip_time(cfg);
    REQUIRE(b.components.size() == 2);
    CHECK(b.components[0].second + b.components[1].second == b.round_trip_s);
    CHECK(2.0 * b.one_way_s == b.round_trip_s);
}

TEST_CASE("terminal doppler at the NR mobility target")
{
    const double f = ue_doppler(500.0 / 3.6, 4e9, 0.0);
    CHECK_THAT(f, WithinRel(1853.1338622119558, 1e-12));
    CHECK_THAT(f, WithinRel(1900.0, 0.03));  // the commonly rounded 1.9 kHz
}

TEST_CASE("terminal doppler edge cases")
{
    CHECK_THAT(ue_doppler(500.0 / 3.6, 4e9, deg(90.0)), WithinAbs(0.0, 1e-9));
    CHECK(ue_doppler(0.0, 4e9, 0.0) == 0.0);
    CHECK_THROWS_AS(ue_doppler(-1.0, 4e9, 0.0), std::domain_error);
}

TEST_CASE("satellite doppler across the Ku band")
{
    ScenarioConfig cfg;
    CHECK_THAT(sat_doppler(cfg, deg(45.0)), WithinRel(201622.48289341776, 1e-12));
    cfg.carrier_hz = 11e9;
    CHECK_THAT(sat_doppler(cfg, deg(45.0)), WithinRel(158417.66513054256, 1e-12));
}

TEST_CASE("satellite doppler vanishes at zenith and rejects bad elevations")
{
    const ScenarioConfig cfg;
    CHECK_THAT(sat_doppler(cfg, kPi / 2.0), WithinAbs(0.0, 1e-6));
    CHECK_THROWS_AS(sat_doppler(cfg, -0.01), std::domain_error);
    CHECK_THROWS_AS(sat_doppler(cfg, kPi / 2.0 + 0.01), std::domain_error);
}

TEST_CASE("satellite doppler is strictly decreasing in elevation")
{
    const ScenarioConfig cfg;
    double prev = sat_doppler(cfg, 0.0) + 1.0;
    for (double d = 0.0; d <= 90.0; d += 1.0) {
        const double f = sat_doppler(cfg, deg(d));
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("apparent elevation is exact at zero error")
{
    const double theta = deg(63.0);
    CHECK(apparent_elevation(1.5e6, theta, 0.0) == theta);
}

TEST_CASE("apparent elevation of the symmetric right triangle")
{
    // displacement equal to the slant range at zenith looks like 45 degrees
    CHECK_THAT(apparent_elevation(1.2e6, kPi / 2.0, 1.2e6), WithinRel(kPi / 4.0, 1e-12));
}

TEST_CASE("apparent elevation satisfies both displacement equations")
{
    const ScenarioConfig cfg;
    for (double theta_deg : {45.0, 60.0, 75.0, 90.0}) {
        for (double rb : {1e3, 10e3, 50e3}) {
            const double theta = deg(theta_deg);
            const double d = slant_range(cfg, theta);
            const double theta_e = apparent_elevation(d, theta, rb);
            // the displaced range closes the triangle
            const double d_e = std::sqrt(d * d + rb * rb + 2.0 * rb * d * std::cos(theta));
            CAPTURE(theta_deg, rb);
            CHECK_THAT(d_e * std::cos(theta_e), WithinRel(d * std::cos(theta) + rb, 1e-9));
            CHECK_THAT(d_e * d_e + rb * rb - 2.0 * rb * d_e * std::cos(theta_e),
                       WithinRel(d * d, 1e-9));
        }
    }
}

TEST_CASE("perfect position knowledge leaves no residual doppler")
{
    const ScenarioConfig cfg;
    for (double d = 45.0; d <= 90.0; d += 5.0) {
        const DopplerResult r = residual_doppler(cfg, deg(d), 0.0);
        CAPTURE(d);
        CHECK(r.residual_doppler_hz <= 1e-9 * std::max(1.0, r.true_doppler_hz));
    }
}

TEST_CASE("residual doppler at the 15 and 30 kHz position-error anchors")
{
    const ScenarioConfig cfg;
    const DopplerResult narrow = residual_doppler(cfg, kPi / 2.0, 3.95e3);
    CHECK_THAT(narrow.residual_doppler_hz, WithinRel(938.5716958185537, 1e-9));
    CHECK_THAT(narrow.residual_doppler_hz, WithinRel(950.0, 0.03));

    const DopplerResult wide = residual_doppler(cfg, kPi / 2.0, 7.9e3);
    CHECK_THAT(wide.residual_doppler_hz, WithinRel(1877.1128842429496, 1e-9));
    CHECK_THAT(wide.residual_doppler_hz, WithinRel(1900.0, 0.03));
}

TEST_CASE("residual doppler grows strictly with the position error at zenith")
{
    const ScenarioConfig cfg;
    double prev = -1.0;
    for (double rb = 0.0; rb <= 50e3; rb += 1e3) {
        const double r = residual_doppler(cfg, kPi / 2.0, rb).residual_doppler_hz;
        CHECK((r > prev || (rb == 0.0 && r == 0.0)));
        prev = r;
    }
}

TEST_CASE("residual doppler checks its elevation domain")
{
    const ScenarioConfig cfg;
    CHECK_THROWS_AS(residual_doppler(cfg, deg(30.0), 1e3), std::domain_error);
    CHECK_THROWS_AS(residual_doppler(cfg, deg(91.0), 1e3), std::domain_error);
}

TEST_CASE("degenerate 1x1 surface equals the pointwise call")
{
    const ScenarioConfig cfg;
    const double elevation = deg(70.0);
    const std::vector<double> e{elevation}, rb{5e3};
    const auto surface = residual_doppler_surface(cfg, e, rb);
    REQUIRE(surface.size() == 1);
    const DopplerResult point = residual_doppler(cfg, elevation, 5e3);
    CHECK(surface[0].residual_doppler_hz == point.residual_doppler_hz);
}

TEST_CASE("surface agrees with pointwise evaluation and is row-major")
{
    const ScenarioConfig cfg;
    std::vector<double> elevations, errors;
    for (double d = 45.0; d <= 90.0; d += 5.0)
        elevations.push_back(deg(d));
    for (double rb = 0.0; rb <= 50e3; rb += 5e3)
        errors.push_back(rb);

    const auto surface = residual_doppler_surface(cfg, elevations, errors);
    REQUIRE(surface.size() == elevations.size() * errors.size());

    std::size_t i = 0;
    for (double elevation : elevations)
        for (double rb : errors) {
            const DopplerResult point = residual_doppler(cfg, elevation, rb);
            CHECK(surface[i].elevation_rad == elevation);
            CHECK(surface[i].position_error_m == rb);
            CHECK(surface[i].residual_doppler_hz == point.residual_doppler_hz);
            ++i;
        }
}

TEST_CASE("on the full grid the worst residual sits at zenith")
{
    const ScenarioConfig cfg;
    for (double rb = 1e3; rb <= 50e3; rb += 1e3) {
        double best_elev = 0.0, best = -1.0;
        for (double d = 45.0; d <= 90.0; d += 1.0) {
            const double r = residual_doppler(cfg, deg(d), rb).residual_doppler_hz;
            if (r > best) {
                best = r;
                best_elev = d;
            }
        }
        CAPTURE(rb);
        CHECK(best_elev == 90.0);
    }
}

TEST_CASE("surface rejects empty grids")
{
    const ScenarioConfig cfg;
    const std::vector<double> none, one{kPi / 2.0};
    CHECK_THROWS_AS(residual_doppler_surface(cfg, none, one), std::domain_error);
    CHECK_THROWS_AS(residual_doppler_surface(cfg, one, none), std::domain_error);
}
