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

#include "leonr/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace leonr;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

TEST_CASE("empty document yields the reference constellation")
{
    const ScenarioConfig cfg = load_scenario("");
    CHECK(cfg.altitude_m == 1.2e6);
    CHECK(cfg.beam_diameter_m == 3.2e5);
    CHECK_THAT(cfg.min_elevation_rad, WithinRel(std::numbers::pi / 4.0, 1e-15));
    CHECK(cfg.carrier_hz == 14e9);
    CHECK(cfg.feeder_extra_delay_s == 0.0);
    CHECK(cfg.constants.earth_radius_m == 6.371e6);
    CHECK(cfg.constants.earth_mu_m3s2 == 3.986004418e14);
    CHECK(cfg.constants.light_speed_ms == 2.99792458e8);
}

TEST_CASE("single-field override keeps the other defaults")
{
    const ScenarioConfig cfg = load_scenario("carrier_hz = 4e9\n");
    CHECK(cfg.carrier_hz == 4e9);
    CHECK(cfg.altitude_m == 1.2e6);
    CHECK(cfg.beam_diameter_m == 3.2e5);
}

TEST_CASE("comments and blank lines are ignored")
{
    const ScenarioConfig cfg = load_scenario(
        "# reference study, lower Ku edge\n"
        "\n"
        "carrier_hz = 11e9   # worst case is the top edge\n"
        "   altitude_m=6e5\n");
    CHECK(cfg.carrier_hz == 11e9);
    CHECK(cfg.altitude_m == 6e5);
}

TEST_CASE("zero altitude is rejected by validation")
{
    CHECK_THROWS_MATCHES(load_scenario("altitude_m = 0\n"), ScenarioError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("altitude_m")));
}

TEST_CASE("parse failures name the line and key")
{
    CHECK_THROWS_MATCHES(load_scenario("altitude_m 1.2e6\n"), ScenarioError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("line 1")));
    CHECK_THROWS_MATCHES(load_scenario("# ok\norbital_shells = 3\n"), ScenarioError,
                         Catch::Matchers::MessageMatches(
                             ContainsSubstring("line 2") && ContainsSubstring("orbital_shells")));
    CHECK_THROWS_MATCHES(load_scenario("carrier_hz = fourteen\n"), ScenarioError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("carrier_hz")));
}

TEST_CASE("validation names the violated constraint")
{
    CHECK_THROWS_MATCHES(load_scenario("beam_diameter_m = -1\n"), ScenarioError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("beam_diameter_m")));
    CHECK_THROWS_MATCHES(load_scenario("min_elevation_rad = 2.0\n"), ScenarioError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("min_elevation_rad")));
    CHECK_THROWS_MATCHES(load_scenario("min_elevation_rad = 0\n"), ScenarioError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("min_elevation_rad")));
    CHECK_THROWS_MATCHES(load_scenario("light_speed_ms = 0\n"), ScenarioError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("light_speed_ms")));
    CHECK_THROWS_MATCHES(load_scenario("feeder_extra_delay_s = -1e-3\n"), ScenarioError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("feeder_extra_delay_s")));
}

namespace {

ScenarioConfig random_valid_config(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto log_uniform = [&](double lo, double hi) {
        return lo * std::exp(unit(rng) * std::log(hi / lo));
    };
    ScenarioConfig cfg;
    cfg.altitude_m = log_uniform(1e5, 4e7);
    cfg.beam_diameter_m = log_uniform(1e3, 1e6);
    cfg.min_elevation_rad = unit(rng) * (std::numbers::pi / 2.0 - 1e-3) + 1e-3;
    cfg.carrier_hz = log_uniform(1e9, 1e11);
    cfg.feeder_extra_delay_s = unit(rng) * 1e-2;
    cfg.constants.earth_radius_m = log_uniform(1e6, 1e7);
    cfg.constants.earth_mu_m3s2 = log_uniform(1e13, 1e15);
    cfg.constants.light_speed_ms = log_uniform(1e8, 1e9);
    return cfg;
}

} // namespace

TEST_CASE("render/load round-trips every valid config")
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const ScenarioConfig cfg = random_valid_config(rng);
        CAPTURE(i);
        CHECK(load_scenario(render_scenario(cfg)) == cfg);
    }
}

TEST_CASE("validation accepts every valid config and rejects every corrupted one")
{
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        ScenarioConfig cfg = random_valid_config(rng);
        CHECK_NOTHROW(validate_scenario(cfg));

        // break exactly one invariant
        switch (i % 5) {
            case 0: cfg.altitude_m = 0.0; break;
            case 1: cfg.beam_diameter_m = -cfg.beam_diameter_m; break;
            case 2: cfg.carrier_hz = 0.0; break;
            case 3: cfg.min_elevation_rad = std::numbers::pi / 2.0 + 0.1; break;
            case 4: cfg.constants.earth_radius_m = 0.0; break;
        }
        CHECK_THROWS_AS(validate_scenario(cfg), ScenarioError);
    }
}
