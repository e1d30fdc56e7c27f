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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace leonr {

/// Thrown on scenario parse or validation failures. Parse errors name the
/// offending line and key; validation errors name the violated constraint.
class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Geodetic constants. Defaults are the standard values; the study results
/// are insensitive to anything beyond the first few digits.
struct PhysicalConstants
{
    double earth_radius_m = 6.371e6;        // mean Earth radius
    double earth_mu_m3s2 = 3.986004418e14;  // gravitational parameter G*M
    double light_speed_ms = 2.99792458e8;

    bool operator==(const PhysicalConstants &) const = default;
};

/// One study configuration: constellation geometry plus radio parameters.
/// Immutable after load; safe to share across threads.
///
/// Defaults describe the reference constellation: 1200 km altitude,
/// 320 km beams, 45 degree minimum elevation, Ku-band FDD backhaul.
/// The carrier defaults to 14 GHz (top of Ku) so Doppler figures are
/// worst-case over the band.
struct ScenarioConfig
{
    double altitude_m = 1.2e6;
    double beam_diameter_m = 3.2e5;
    double min_elevation_rad = std::numbers::pi / 4.0;
    double carrier_hz = 14.0e9;

    // Extra one-way delay of the satellite-DgNB leg beyond the altitude/c
    // approximation. Zero keeps the feeder leg at exactly altitude_m.
    double feeder_extra_delay_s = 0.0;

    PhysicalConstants constants{};

    bool operator==(const ScenarioConfig &) const = default;
};

/// Checks every structural constraint on a scenario. Throws ScenarioError
/// naming the first violated constraint.
inline void validate_scenario(const ScenarioConfig &cfg)
{
    const auto positive = [](double v, const char *name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ScenarioError(std::string("scenario invariant violated: ") + name +
                                " must be strictly positive");
    };
    positive(cfg.altitude_m, "altitude_m");
    positive(cfg.beam_diameter_m, "beam_diameter_m");
    positive(cfg.carrier_hz, "carrier_hz");
    positive(cfg.constants.earth_radius_m, "earth_radius_m");
    positive(cfg.constants.earth_mu_m3s2, "earth_mu_m3s2");
    positive(cfg.constants.light_speed_ms, "light_speed_ms");
    if (!(cfg.min_elevation_rad > 0.0) || !(cfg.min_elevation_rad <= std::numbers::pi / 2.0))
        throw ScenarioError("scenario invariant violated: min_elevation_rad must lie in (0, pi/2]");
    if (!std::isfinite(cfg.feeder_extra_delay_s) || cfg.feeder_extra_delay_s < 0.0)
        throw ScenarioError("scenario invariant violated: feeder_extra_delay_s must be >= 0");
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool assign_scenario_key(ScenarioConfig &cfg, std::string_view key, double value)
{
    if (key == "altitude_m") cfg.altitude_m = value;
    else if (key == "beam_diameter_m") cfg.beam_diameter_m = value;
    else if (key == "min_elevation_rad") cfg.min_elevation_rad = value;
    else if (key == "carrier_hz") cfg.carrier_hz = value;
    else if (key == "feeder_extra_delay_s") cfg.feeder_extra_delay_s = value;
    else if (key == "earth_radius_m") cfg.constants.earth_radius_m = value;
    else if (key == "earth_mu_m3s2") cfg.constants.earth_mu_m3s2 = value;
    else if (key == "light_speed_ms") cfg.constants.light_speed_ms = value;
    else return false;
    return true;
}

} // namespace detail

/// Parses the flat "key = value" scenario format. Keys match the field
/// names, values are SI (meters, radians, hertz, seconds), '#' starts a
/// comment. Unspecified keys keep their defaults. The parsed config is
/// validated before it is returned.
inline ScenarioConfig load_scenario(std::string_view text)
{
    ScenarioConfig cfg;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        ++line_no;
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ScenarioError("scenario parse error at line " + std::to_string(line_no) +
                                ": expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view raw = detail::trim(line.substr(eq + 1));

        double value = 0.0;
        const auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
        if (ec != std::errc{} || end != raw.data() + raw.size())
            throw ScenarioError("scenario parse error at line " + std::to_string(line_no) +
                                ": key '" + key + "' has a non-numeric value");
        if (!detail::assign_scenario_key(cfg, key, value))
            throw ScenarioError("scenario parse error at line " + std::to_string(line_no) +
                                ": unknown key '" + key + "'");
    }
    validate_scenario(cfg);
    return cfg;
}

/// Serializes a config in the same flat format load_scenario reads.
/// Values are written with full precision so load(render(cfg)) == cfg.
inline std::string render_scenario(const ScenarioConfig &cfg)
{
    char buf[64];
    std::string out;
    const auto emit = [&](const char *key, double value) {
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        out += key;
        out += " = ";
        out += buf;
        out += '\n';
    };
    emit("altitude_m", cfg.altitude_m);
    emit("beam_diameter_m", cfg.beam_diameter_m);
    emit("min_elevation_rad", cfg.min_elevation_rad);
    emit("carrier_hz", cfg.carrier_hz);
    emit("feeder_extra_delay_s", cfg.feeder_extra_delay_s);
    emit("earth_radius_m", cfg.constants.earth_radius_m);
    emit("earth_mu_m3s2", cfg.constants.earth_mu_m3s2);
    emit("light_speed_ms", cfg.constants.light_speed_ms);
    return out;
}

} // namespace leonr
