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
//
// Command-line front end. Subcommands:
//
//   impairments     delay budget and satellite Doppler across elevations
//   doppler-surface residual Doppler vs (elevation, position error), CSV
//   numerology      subcarrier-spacing table with Doppler/position budgets
//   ra-check        random-access timing feasibility for both stages
//   harq-dim        HARQ process/buffer/control dimensioning
//   harq-sim        deterministic HARQ protocol simulation
//   sweep           Cartesian sweep of a subcommand's scalar inputs, CSV
//
// Every subcommand takes --scenario <file> (flat key = value, SI units) and
// repeatable --set key=value overrides. Exit codes: 0 on success (a
// reported infeasibility is a finding, not an error), 1 on configuration or
// runtime errors, 2 on usage errors.

#include "leonr/leonr.hpp"
#include "leonr/format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes either to stdout ("-") or to a file, creating it fresh.
class OutputSink {
  public:
    explicit OutputSink(const std::string &path)
    {
        if (path != "-") {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_)
                throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

// Shared scenario handling: file, then --set overrides. Overrides accept
// degenerate-but-meaningful limit values (zero altitude, zero beam) that
// the file loader rejects, so limits remain reachable from the CLI.
struct ScenarioArgs {
    std::string path;
    std::vector<std::string> overrides;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--scenario", path, "scenario file (flat key = value, SI units)");
        cmd->add_option("--set", overrides, "override one scenario key, e.g. --set carrier_hz=11e9")
            ->type_name("KEY=VALUE");
    }

    leonr::ScenarioConfig load() const
    {
        leonr::ScenarioConfig cfg;
        if (!path.empty())
            cfg = leonr::load_scenario(read_file(path));
        for (const std::string &kv : overrides) {
            const std::size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("--set expects key=value, got '" + kv + "'");
            const std::string key = kv.substr(0, eq);
            double value = 0.0;
            try {
                value = std::stod(kv.substr(eq + 1));
            } catch (const std::exception &) {
                throw std::runtime_error("--set " + key + ": non-numeric value");
            }
            if (!leonr::detail::assign_scenario_key(cfg, key, value))
                throw std::runtime_error("--set: unknown scenario key '" + key + "'");
        }
        sanity_check(cfg);
        return cfg;
    }

  private:
    static void sanity_check(const leonr::ScenarioConfig &cfg)
    {
        const auto bad = [](const char *what) {
            throw std::runtime_error(std::string("scenario override out of range: ") + what);
        };
        if (!(cfg.altitude_m >= 0.0) || !std::isfinite(cfg.altitude_m))
            bad("altitude_m must be >= 0");
        if (!(cfg.beam_diameter_m >= 0.0) || !std::isfinite(cfg.beam_diameter_m))
            bad("beam_diameter_m must be >= 0");
        if (!(cfg.carrier_hz > 0.0))
            bad("carrier_hz must be > 0");
        if (!(cfg.min_elevation_rad > 0.0) || !(cfg.min_elevation_rad <= std::numbers::pi / 2.0))
            bad("min_elevation_rad must lie in (0, pi/2]");
        if (!(cfg.feeder_extra_delay_s >= 0.0))
            bad("feeder_extra_delay_s must be >= 0");
        if (!(cfg.constants.earth_radius_m > 0.0) || !(cfg.constants.earth_mu_m3s2 > 0.0) ||
            !(cfg.constants.light_speed_ms > 0.0))
            bad("physical constants must be > 0");
    }
};

void print_scenario_echo(std::ostream &os, const leonr::ScenarioConfig &cfg)
{
    os << "[scenario]\n" << leonr::render_scenario(cfg);
}

void print_constants_footer(std::ostream &os, const leonr::ScenarioConfig &cfg)
{
    os << "[constants]\n"
       << "earth_radius_m = " << leonr::format_number(cfg.constants.earth_radius_m) << "\n"
       << "earth_mu_m3s2 = " << leonr::format_number(cfg.constants.earth_mu_m3s2) << "\n"
       << "light_speed_ms = " << leonr::format_number(cfg.constants.light_speed_ms) << "\n";
}

std::vector<double> linear_grid(double start, double stop, double step)
{
    if (!(step > 0.0))
        throw std::runtime_error("grid step must be > 0");
    if (stop < start)
        throw std::runtime_error("grid stop must be >= start");
    std::vector<double> v;
    const double slack = step * 1e-9;
    for (double x = start; x <= stop + slack; x += step)
        v.push_back(std::min(x, stop));
    return v;
}

// ---------------------------------------------------------------- impairments

struct ImpairmentsArgs {
    ScenarioArgs scenario;
    double elev_start_deg = -1.0;  // <0: use the scenario's minimum elevation
    double elev_stop_deg = 90.0;
    double elev_step_deg = 5.0;
    std::string csv;
};

void run_impairments(const ImpairmentsArgs &args)
{
    const leonr::ScenarioConfig cfg = args.scenario.load();
    const leonr::DelayBudget budget = leonr::round_trip_time(cfg);

    const double start =
        args.elev_start_deg >= 0.0 ? args.elev_start_deg : cfg.min_elevation_rad / kDegToRad;
    const std::vector<double> grid = linear_grid(start, args.elev_stop_deg, args.elev_step_deg);

    if (!args.csv.empty()) {
        OutputSink sink(args.csv);
        std::ostream &os = sink.stream();
        os << "elevation_deg,slant_range_m,sat_doppler_hz\n";
        for (double deg : grid) {
            const double rad = deg * kDegToRad;
            os << leonr::format_number(deg) << ',' << leonr::format_number(leonr::slant_range(cfg, rad))
               << ',' << leonr::format_number(leonr::sat_doppler(cfg, rad)) << '\n';
        }
        if (args.csv == "-")
            return;
    }

    std::ostream &os = std::cout;
    print_scenario_echo(os, cfg);
    os << "\n[delay budget]\n";
    for (const auto &[leg, seconds] : budget.components)
        os << leg << " round trip: " << leonr::format_number(seconds * 1e3) << " ms\n";
    os << "one-way delay: " << leonr::format_number(budget.one_way_s * 1e3) << " ms\n";
    os << "round-trip delay: " << leonr::format_number(budget.round_trip_s * 1e3) << " ms\n";

    os << "\n[satellite doppler]\n";
    os << "carrier: " << leonr::format_number(cfg.carrier_hz) << " Hz\n";
    for (double deg : grid) {
        const double rad = deg * kDegToRad;
        os << leonr::format_number(deg)
           << " deg: " << leonr::format_number(leonr::sat_doppler(cfg, rad)) << " Hz (slant "
           << leonr::format_number(leonr::slant_range(cfg, rad) / 1e3) << " km)\n";
    }

    os << "\n[terminal doppler reference]\n";
    const double ue = leonr::ue_doppler(500.0 / 3.6, 4e9, 0.0, cfg.constants.light_speed_ms);
    os << "500 km/h at 4 GHz carrier: " << leonr::format_number(ue) << " Hz\n";
    os << '\n';
    print_constants_footer(os, cfg);
}

// ------------------------------------------------------------ doppler-surface

struct SurfaceArgs {
    ScenarioArgs scenario;
    double elev_start_deg = -1.0;
    double elev_stop_deg = 90.0;
    double elev_step_deg = 1.0;
    double error_start_m = 0.0;
    double error_stop_m = 50e3;
    double error_step_m = 1e3;
    std::string out = "-";
};

void run_doppler_surface(const SurfaceArgs &args)
{
    const leonr::ScenarioConfig cfg = args.scenario.load();
    const double start =
        args.elev_start_deg >= 0.0 ? args.elev_start_deg : cfg.min_elevation_rad / kDegToRad;
    const std::vector<double> elev_deg = linear_grid(start, args.elev_stop_deg, args.elev_step_deg);
    const std::vector<double> errors = linear_grid(args.error_start_m, args.error_stop_m, args.error_step_m);

    std::vector<double> elev_rad(elev_deg.size());
    std::transform(elev_deg.begin(), elev_deg.end(), elev_rad.begin(),
                   [](double d) { return d * kDegToRad; });

    const std::vector<leonr::DopplerResult> surface =
        leonr::residual_doppler_surface(cfg, elev_rad, errors);

    OutputSink sink(args.out);
    std::ostream &os = sink.stream();
    os << "elevation_deg,position_error_m,true_doppler_hz,estimated_doppler_hz,residual_doppler_hz\n";
    std::size_t i = 0;
    for (double deg : elev_deg)
        for (std::size_t e = 0; e < errors.size(); ++e, ++i) {
            const leonr::DopplerResult &r = surface[i];
            os << leonr::format_number(deg) << ',' << leonr::format_number(r.position_error_m) << ','
               << leonr::format_number(r.true_doppler_hz) << ','
               << leonr::format_number(r.estimated_doppler_hz) << ','
               << leonr::format_number(r.residual_doppler_hz) << '\n';
        }
}

// ----------------------------------------------------------------- numerology

struct NumerologyArgs {
    ScenarioArgs scenario;
    int max_index = 3;
    double ratio = leonr::kDefaultDopplerToleranceRatio;
    std::string csv;
};

void run_numerology(const NumerologyArgs &args)
{
    const leonr::ScenarioConfig cfg = args.scenario.load();
    const std::vector<leonr::NumerologyEntry> table =
        leonr::numerology_table(cfg, args.max_index, args.ratio);

    if (!args.csv.empty()) {
        OutputSink sink(args.csv);
        std::ostream &os = sink.stream();
        os << "scs_khz,max_doppler_khz,max_position_error_km\n";
        for (const leonr::NumerologyEntry &e : table)
            os << leonr::format_number(e.scs_hz / 1e3) << ','
               << leonr::format_number(e.tolerated_doppler_hz / 1e3) << ','
               << leonr::format_number(e.max_position_error_m / 1e3) << '\n';
        if (args.csv == "-")
            return;
    }

    std::ostream &os = std::cout;
    print_scenario_echo(os, cfg);
    os << "\n[numerology]\n";
    os << "doppler tolerance ratio: " << leonr::format_number(args.ratio) << "\n";
    for (const leonr::NumerologyEntry &e : table)
        os << "scs " << leonr::format_number(e.scs_hz / 1e3)
           << " kHz: max doppler " << leonr::format_number(e.tolerated_doppler_hz / 1e3)
           << " kHz, max position error " << leonr::format_number(e.max_position_error_m / 1e3)
           << " km\n";
    os << '\n';
    print_constants_footer(os, cfg);
}

// ------------------------------------------------------------------- ra-check

struct RaCheckArgs {
    ScenarioArgs scenario;
    double rar_window_s = 15e-3;
    double contention_timer_s = 64e-3;
    std::string preamble = "3";
    double preamble_radius_m = -1.0;  // >=0: custom format with this radius
    double differential_m = -1.0;     // <0: derive from scenario geometry
    double rtt_s = -1.0;              // <0: derive from scenario
    std::string rar_policy = "fixed";
    bool sat_link = false;
    double rar_margin_s = 1e-3;
    double gnss_error_m = -1.0;       // >=0: pre-compensated timing advance
};

void print_verdict(std::ostream &os, const char *name, const leonr::RaVerdict &v)
{
    os << name << ": feasible=" << (v.feasible ? "true" : "false");
    if (!v.violations.empty()) {
        os << " violations=";
        for (std::size_t i = 0; i < v.violations.size(); ++i)
            os << (i ? "," : "") << v.violations[i].budget;
    }
    os << '\n';
    for (const leonr::BudgetViolation &viol : v.violations)
        os << "  " << viol.budget << ": required " << leonr::format_number(viol.required_s * 1e3)
           << " ms, available " << leonr::format_number(viol.available_s * 1e3) << " ms\n";
}

void run_ra_check(const RaCheckArgs &args)
{
    const leonr::ScenarioConfig cfg = args.scenario.load();

    const double rtt = args.rtt_s >= 0.0 ? args.rtt_s : leonr::round_trip_time(cfg).round_trip_s;
    const double differential = args.differential_m >= 0.0
                                    ? args.differential_m
                                    : leonr::differential_distance(cfg).differential_m;

    leonr::PreambleFormat preamble;
    if (args.preamble_radius_m >= 0.0) {
        preamble = leonr::make_preamble_format(
            "custom", 0.0, 0.0, 2.0 * args.preamble_radius_m / cfg.constants.light_speed_ms,
            cfg.constants.light_speed_ms);
    } else {
        const auto &formats = leonr::lte_preamble_formats();
        const auto it = std::find_if(formats.begin(), formats.end(),
                                     [&](const auto &f) { return f.name == args.preamble; });
        if (it == formats.end())
            throw std::runtime_error("unknown preamble format '" + args.preamble +
                                     "' (expected 0..3 or --preamble-radius)");
        preamble = *it;
    }

    if (args.rar_policy != "fixed" && args.rar_policy != "flagged")
        throw std::runtime_error("--rar-policy must be 'fixed' or 'flagged'");

    leonr::RaTimers timers{args.rar_window_s, args.contention_timer_s};
    const double required_window = leonr::required_rar_window(rtt, args.rar_margin_s);
    // Under the flagged policy the RN learns from its control channel that a
    // satellite link is present and sizes the RAR window accordingly.
    if (args.rar_policy == "flagged" && args.sat_link)
        timers.rar_window_s = std::max(timers.rar_window_s, required_window);

    const leonr::RaVerdict ue = leonr::check_ue_ra(timers, rtt);
    leonr::RaVerdict rn;
    std::optional<leonr::GnssTaResult> gnss;
    if (args.gnss_error_m >= 0.0) {
        gnss = leonr::gnss_assisted_ta(differential, args.gnss_error_m, preamble);
        // the pre-compensated preamble only carries the estimation error
        rn = leonr::check_rn_attach(timers, rtt, preamble, args.gnss_error_m);
    } else {
        rn = leonr::check_rn_attach(timers, rtt, preamble, differential);
    }

    std::ostream &os = std::cout;
    print_scenario_echo(os, cfg);
    os << "\n[random access]\n";
    os << "satellite rtt: " << leonr::format_number(rtt * 1e3) << " ms\n";
    os << "differential distance: " << leonr::format_number(differential / 1e3) << " km\n";
    os << "timing advance: " << leonr::format_number(leonr::timing_advance(differential) * 1e3)
       << " ms\n";
    os << "preamble format " << preamble.name << ": cell radius "
       << leonr::format_number(preamble.max_cell_radius_m / 1e3) << " km\n";
    os << "rar policy: " << args.rar_policy << (args.sat_link ? " (satellite link flagged)" : "")
       << "\n";
    os << "rar window applied: " << leonr::format_number(timers.rar_window_s * 1e3) << " ms\n";
    os << "required rar window (rtt + margin): " << leonr::format_number(required_window * 1e3)
       << " ms\n";
    if (gnss) {
        os << "gnss-assisted ta: residual " << leonr::format_number(gnss->residual_ta_s * 1e3)
           << " ms, " << (gnss->feasible ? "within" : "exceeds") << " guard budget\n";
    }
    os << '\n';
    print_verdict(os, "ue_ra", ue);
    print_verdict(os, "rn_attach", rn);
    os << '\n';
    print_constants_footer(os, cfg);
}

// ------------------------------------------------------------------- harq-dim

struct HarqDimArgs {
    ScenarioArgs scenario;
    double tti_s = 1e-3;
    double proc_rx_s = 4e-3;
    double proc_tx_s = 4e-3;
    double ack_s = 0.0;
    double tp_s = 8e-3;
    bool tp_from_scenario = false;
    double rate = 100e6;
};

void run_harq_dim(const HarqDimArgs &args)
{
    const leonr::ScenarioConfig cfg = args.scenario.load();
    leonr::HarqConfig hc;
    hc.tti_s = args.tti_s;
    hc.proc_rx_s = args.proc_rx_s;
    hc.proc_tx_s = args.proc_tx_s;
    hc.ack_duration_s = args.ack_s;
    hc.propagation_s = args.tp_from_scenario ? leonr::round_trip_time(cfg).one_way_s : args.tp_s;
    hc.link_rate_bits_per_s = args.rate;

    const double cycle = leonr::harq_cycle_time(hc);
    const int n_min = leonr::min_processes(cycle, hc.tti_s);
    const double buffer = leonr::buffer_requirement(n_min, hc.tti_s, hc.link_rate_bits_per_s);
    const double baseline = leonr::buffer_requirement(8, hc.tti_s, hc.link_rate_bits_per_s);

    std::ostream &os = std::cout;
    print_scenario_echo(os, cfg);
    os << "\n[harq dimensioning]\n";
    os << "tti: " << leonr::format_number(hc.tti_s * 1e3) << " ms\n";
    os << "one-way propagation: " << leonr::format_number(hc.propagation_s * 1e3) << " ms\n";
    os << "cycle time: " << leonr::format_number(cycle * 1e3) << " ms\n";
    os << "min processes: " << n_min << "\n";
    os << "dci field width: " << leonr::dci_process_field_width(n_min) << " bits\n";
    os << "soft buffer: " << leonr::format_number(buffer) << " bits\n";
    os << "soft buffer vs 8-process baseline: " << leonr::format_number(buffer / baseline) << "x\n";
    os << "utilization at min processes: "
       << leonr::format_number(leonr::theoretical_utilization(n_min, cycle, hc.tti_s)) << "\n";
    os << "utilization at min processes + 1: "
       << leonr::format_number(leonr::theoretical_utilization(n_min + 1, cycle, hc.tti_s)) << "\n";
    os << '\n';
    print_constants_footer(os, cfg);
}

// ------------------------------------------------------------------- harq-sim

struct HarqSimArgs {
    ScenarioArgs scenario;
    std::string strategy = "full";
    int processes = 24;
    int max_tx = 4;
    int feedback_bits = 0;  // 0: derive from strategy
    int replication = 1;
    std::vector<double> attempt_p{1.0};
    std::vector<std::vector<double>> level_p{{}, {}, {}, {}};
    double tti_s = 1e-3;
    double proc_rx_s = 4e-3;
    double proc_tx_s = 4e-3;
    double ack_s = 0.0;
    double tp_s = 8e-3;
    bool tp_from_scenario = false;
    double rate = 100e6;
    std::uint64_t seed = 1;
    double duration_s = 30.0;
    std::string event_log;
};

leonr::HarqStrategy parse_strategy(const std::string &name)
{
    if (name == "full") return leonr::HarqStrategy::full;
    if (name == "multibit") return leonr::HarqStrategy::multibit;
    if (name == "capped") return leonr::HarqStrategy::capped;
    if (name == "replication") return leonr::HarqStrategy::replication;
    throw std::runtime_error("unknown strategy '" + name +
                             "' (expected full|multibit|capped|replication)");
}

void run_harq_sim(const HarqSimArgs &args)
{
    const leonr::ScenarioConfig cfg = args.scenario.load();
    leonr::HarqConfig hc;
    hc.strategy = parse_strategy(args.strategy);
    hc.num_processes = args.processes;
    hc.max_transmissions = args.max_tx;
    hc.replication_factor = args.replication;
    hc.tti_s = args.tti_s;
    hc.proc_rx_s = args.proc_rx_s;
    hc.proc_tx_s = args.proc_tx_s;
    hc.ack_duration_s = args.ack_s;
    hc.propagation_s = args.tp_from_scenario ? leonr::round_trip_time(cfg).one_way_s : args.tp_s;
    hc.link_rate_bits_per_s = args.rate;
    hc.seed = args.seed;
    hc.error_model.attempt_success = args.attempt_p;
    for (std::size_t level = 0; level < 4; ++level)
        hc.error_model.level_success[level] =
            args.level_p[level].empty() ? args.attempt_p : args.level_p[level];
    hc.feedback_bits = args.feedback_bits != 0
                           ? args.feedback_bits
                           : (hc.strategy == leonr::HarqStrategy::multibit ? 2 : 1);

    std::ofstream log_file;
    std::ostream *log = nullptr;
    if (!args.event_log.empty()) {
        log_file.open(args.event_log, std::ios::binary | std::ios::trunc);
        if (!log_file)
            throw std::runtime_error("cannot open event log: " + args.event_log);
        log = &log_file;
    }

    const leonr::HarqReport report = leonr::simulate(hc, args.duration_s, log);

    std::ostream &os = std::cout;
    print_scenario_echo(os, cfg);
    os << "\n[harq simulation]\n";
    os << "strategy: " << leonr::to_string(hc.strategy) << "\n";
    os << "processes: " << hc.num_processes << "\n";
    os << "cycle time: " << leonr::format_number(leonr::harq_cycle_time(hc) * 1e3) << " ms\n";
    os << "duration: " << leonr::format_number(args.duration_s) << " s (seed " << args.seed << ")\n";
    os << "offered: " << report.offered_tb << "\n";
    os << "delivered: " << report.delivered_tb << "\n";
    os << "dropped: " << report.dropped_tb << "\n";
    os << "utilization: " << leonr::format_number(report.utilization) << "\n";
    os << "goodput: " << leonr::format_number(report.goodput_tb_per_s) << " tb/s\n";
    os << "mean latency: " << leonr::format_number(report.mean_latency_s * 1e3) << " ms\n";
    os << "p95 latency: " << leonr::format_number(report.p95_latency_s * 1e3) << " ms\n";
    os << "peak soft buffer: " << leonr::format_number(report.peak_soft_buffer_bits) << " bits\n";
    os << "transmissions histogram:";
    for (std::size_t n = 1; n < report.retransmission_histogram.size(); ++n)
        if (report.retransmission_histogram[n] != 0)
            os << ' ' << n << ':' << report.retransmission_histogram[n];
    os << "\n\n";
    print_constants_footer(os, cfg);
}

// ---------------------------------------------------------------------- sweep

// One sweepable subcommand: its scalar inputs with defaults, and an
// evaluator producing named outputs. Scenario keys are always sweepable on
// top of these.
struct SweepTarget {
    std::vector<std::pair<std::string, double>> params;
    std::function<std::vector<std::pair<std::string, double>>(
        const leonr::ScenarioConfig &, const std::map<std::string, double> &)>
        eval;
};

std::map<std::string, SweepTarget> sweep_targets()
{
    using Params = std::map<std::string, double>;
    std::map<std::string, SweepTarget> targets;

    targets["impairments"] = {
        {{"elevation_deg", 90.0}},
        [](const leonr::ScenarioConfig &cfg, const Params &p) {
            const double rad = p.at("elevation_deg") * kDegToRad;
            const leonr::DelayBudget b = leonr::round_trip_time(cfg);
            return std::vector<std::pair<std::string, double>>{
                {"rtt_s", b.round_trip_s},
                {"one_way_s", b.one_way_s},
                {"slant_range_m", leonr::slant_range(cfg, rad)},
                {"sat_doppler_hz", leonr::sat_doppler(cfg, rad)},
            };
        }};

    targets["doppler-surface"] = {
        {{"elevation_deg", 90.0}, {"position_error_m", 0.0}},
        [](const leonr::ScenarioConfig &cfg, const Params &p) {
            const leonr::DopplerResult r = leonr::residual_doppler(
                cfg, p.at("elevation_deg") * kDegToRad, p.at("position_error_m"));
            return std::vector<std::pair<std::string, double>>{
                {"true_doppler_hz", r.true_doppler_hz},
                {"estimated_doppler_hz", r.estimated_doppler_hz},
                {"residual_doppler_hz", r.residual_doppler_hz},
            };
        }};

    targets["numerology"] = {
        {{"scs_hz", 15e3}, {"ratio", leonr::kDefaultDopplerToleranceRatio}},
        [](const leonr::ScenarioConfig &cfg, const Params &p) {
            return std::vector<std::pair<std::string, double>>{
                {"tolerated_doppler_hz", leonr::tolerated_doppler(p.at("scs_hz"), p.at("ratio"))},
                {"max_position_error_m",
                 leonr::max_position_error(cfg, p.at("scs_hz"), p.at("ratio"))},
            };
        }};

    targets["ra-check"] = {
        {{"rar_window_s", 15e-3},
         {"contention_timer_s", 64e-3},
         {"preamble_radius_m", 100e3},
         {"differential_m", -1.0},
         {"rtt_s", -1.0}},
        [](const leonr::ScenarioConfig &cfg, const Params &p) {
            const double rtt =
                p.at("rtt_s") >= 0.0 ? p.at("rtt_s") : leonr::round_trip_time(cfg).round_trip_s;
            const double diff = p.at("differential_m") >= 0.0
                                    ? p.at("differential_m")
                                    : leonr::differential_distance(cfg).differential_m;
            const leonr::PreambleFormat preamble = leonr::make_preamble_format(
                "sweep", 0.0, 0.0, 2.0 * p.at("preamble_radius_m") / cfg.constants.light_speed_ms,
                cfg.constants.light_speed_ms);
            const leonr::RaTimers timers{p.at("rar_window_s"), p.at("contention_timer_s")};
            const leonr::RaVerdict ue = leonr::check_ue_ra(timers, rtt);
            const leonr::RaVerdict rn = leonr::check_rn_attach(timers, rtt, preamble, diff);
            return std::vector<std::pair<std::string, double>>{
                {"ue_feasible", ue.feasible ? 1.0 : 0.0},
                {"rn_feasible", rn.feasible ? 1.0 : 0.0},
                {"rn_violations", static_cast<double>(rn.violations.size())},
            };
        }};

    targets["harq-dim"] = {
        {{"tti_s", 1e-3},
         {"proc_rx_s", 4e-3},
         {"proc_tx_s", 4e-3},
         {"ack_s", 0.0},
         {"propagation_s", 8e-3},
         {"link_rate_bits_per_s", 100e6}},
        [](const leonr::ScenarioConfig &, const Params &p) {
            leonr::HarqConfig hc;
            hc.tti_s = p.at("tti_s");
            hc.proc_rx_s = p.at("proc_rx_s");
            hc.proc_tx_s = p.at("proc_tx_s");
            hc.ack_duration_s = p.at("ack_s");
            hc.propagation_s = p.at("propagation_s");
            const double cycle = leonr::harq_cycle_time(hc);
            const int n_min = leonr::min_processes(cycle, hc.tti_s);
            return std::vector<std::pair<std::string, double>>{
                {"t_harq_s", cycle},
                {"n_min", static_cast<double>(n_min)},
                {"dci_bits", static_cast<double>(leonr::dci_process_field_width(n_min))},
                {"buffer_bits",
                 leonr::buffer_requirement(n_min, hc.tti_s, p.at("link_rate_bits_per_s"))},
            };
        }};

    targets["harq-sim"] = {
        {{"tti_s", 1e-3},
         {"proc_rx_s", 4e-3},
         {"proc_tx_s", 4e-3},
         {"ack_s", 0.0},
         {"propagation_s", 8e-3},
         {"processes", 24.0},
         {"max_transmissions", 4.0},
         {"p1", 1.0},
         {"seed", 1.0},
         {"duration_s", 10.0}},
        [](const leonr::ScenarioConfig &, const Params &p) {
            leonr::HarqConfig hc;
            hc.tti_s = p.at("tti_s");
            hc.proc_rx_s = p.at("proc_rx_s");
            hc.proc_tx_s = p.at("proc_tx_s");
            hc.ack_duration_s = p.at("ack_s");
            hc.propagation_s = p.at("propagation_s");
            hc.num_processes = static_cast<int>(p.at("processes"));
            hc.max_transmissions = static_cast<int>(p.at("max_transmissions"));
            hc.error_model.attempt_success = {p.at("p1")};
            hc.seed = static_cast<std::uint64_t>(p.at("seed"));
            const leonr::HarqReport r = leonr::simulate(hc, p.at("duration_s"));
            return std::vector<std::pair<std::string, double>>{
                {"utilization", r.utilization},
                {"goodput_tb_per_s", r.goodput_tb_per_s},
                {"mean_latency_s", r.mean_latency_s},
                {"delivered", static_cast<double>(r.delivered_tb)},
                {"dropped", static_cast<double>(r.dropped_tb)},
            };
        }};

    return targets;
}

struct SweepArgs {
    ScenarioArgs scenario;
    std::string target;
    std::vector<std::string> ranges;  // key=start:stop:step
    std::vector<std::string> lists;   // key=v1,v2,...
    std::string out = "-";
};

bool is_scenario_key(const std::string &key)
{
    leonr::ScenarioConfig probe;
    return leonr::detail::assign_scenario_key(probe, key, probe.altitude_m);
}

void run_sweep(const SweepArgs &args)
{
    const auto targets = sweep_targets();
    const auto target_it = targets.find(args.target);
    if (target_it == targets.end()) {
        std::string known;
        for (const auto &[name, t] : targets)
            known += (known.empty() ? "" : ", ") + name;
        throw std::runtime_error("unknown sweep target '" + args.target + "' (one of: " + known + ")");
    }
    const SweepTarget &target = target_it->second;
    const leonr::ScenarioConfig base = args.scenario.load();

    // collect swept axes: name -> values
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    const auto known_param = [&](const std::string &key) {
        if (is_scenario_key(key))
            return true;
        return std::any_of(target.params.begin(), target.params.end(),
                           [&](const auto &p) { return p.first == key; });
    };
    const auto add_axis = [&](const std::string &key, std::vector<double> values) {
        if (!known_param(key))
            throw std::runtime_error("sweep: '" + key + "' is not a scalar input of " + args.target);
        if (values.empty())
            throw std::runtime_error("sweep: no values for '" + key + "'");
        axes.emplace_back(key, std::move(values));
    };
    for (const std::string &axis : args.ranges) {
        const std::size_t eq = axis.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--vary expects key=start:stop:step");
        const std::string key = axis.substr(0, eq);
        double start = 0, stop = 0, step = 0;
        if (std::sscanf(axis.c_str() + eq + 1, "%lf:%lf:%lf", &start, &stop, &step) != 3)
            throw std::runtime_error("--vary expects key=start:stop:step, got '" + axis + "'");
        add_axis(key, linear_grid(start, stop, step));
    }
    for (const std::string &axis : args.lists) {
        const std::size_t eq = axis.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--list expects key=v1,v2,...");
        const std::string key = axis.substr(0, eq);
        std::vector<double> values;
        std::stringstream ss(axis.substr(eq + 1));
        std::string item;
        while (std::getline(ss, item, ','))
            values.push_back(std::stod(item));
        add_axis(key, std::move(values));
    }
    if (axes.empty())
        throw std::runtime_error("sweep: give at least one --vary or --list axis");
    std::sort(axes.begin(), axes.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });

    // Cartesian product, one row per combination
    std::vector<std::vector<double>> rows;
    std::vector<double> current(axes.size());
    const std::function<void(std::size_t)> recurse = [&](std::size_t depth) {
        if (depth == axes.size()) {
            rows.push_back(current);
            return;
        }
        for (double v : axes[depth].second) {
            current[depth] = v;
            recurse(depth + 1);
        }
    };
    recurse(0);
    std::sort(rows.begin(), rows.end());  // rows ordered by input tuple

    OutputSink sink(args.out);
    std::ostream &os = sink.stream();
    bool header_done = false;
    for (const std::vector<double> &row : rows) {
        leonr::ScenarioConfig cfg = base;
        std::map<std::string, double> params;
        for (const auto &[name, value] : target.params)
            params[name] = value;
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const std::string &key = axes[i].first;
            if (is_scenario_key(key))
                leonr::detail::assign_scenario_key(cfg, key, row[i]);
            else
                params[key] = row[i];
        }
        const auto outputs = target.eval(cfg, params);
        if (!header_done) {
            for (std::size_t i = 0; i < axes.size(); ++i)
                os << (i ? "," : "") << axes[i].first;
            for (const auto &[name, value] : outputs)
                os << ',' << name;
            os << '\n';
            header_done = true;
        }
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << leonr::format_number(row[i]);
        for (const auto &[name, value] : outputs)
            os << ',' << leonr::format_number(value);
        os << '\n';
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Feasibility analysis of 5G NR procedures over a LEO satellite backhaul"};
    app.require_subcommand(1);

    ImpairmentsArgs imp;
    auto *imp_cmd = app.add_subcommand("impairments", "Delay budget and Doppler across elevations");
    imp.scenario.attach(imp_cmd);
    imp_cmd->add_option("--elev-start", imp.elev_start_deg, "grid start, degrees (default: scenario minimum)");
    imp_cmd->add_option("--elev-stop", imp.elev_stop_deg, "grid stop, degrees");
    imp_cmd->add_option("--elev-step", imp.elev_step_deg, "grid step, degrees");
    imp_cmd->add_option("--csv", imp.csv, "write the elevation table as CSV ('-' for stdout)");
    imp_cmd->callback([&] { run_impairments(imp); });

    SurfaceArgs surf;
    auto *surf_cmd = app.add_subcommand("doppler-surface",
                                        "Residual Doppler vs elevation and position error (CSV)");
    surf.scenario.attach(surf_cmd);
    surf_cmd->add_option("--elev-start", surf.elev_start_deg, "degrees (default: scenario minimum)");
    surf_cmd->add_option("--elev-stop", surf.elev_stop_deg, "degrees");
    surf_cmd->add_option("--elev-step", surf.elev_step_deg, "degrees");
    surf_cmd->add_option("--error-start", surf.error_start_m, "meters");
    surf_cmd->add_option("--error-stop", surf.error_stop_m, "meters");
    surf_cmd->add_option("--error-step", surf.error_step_m, "meters");
    surf_cmd->add_option("--out", surf.out, "output CSV path ('-' for stdout)");
    surf_cmd->callback([&] { run_doppler_surface(surf); });

    NumerologyArgs num;
    auto *num_cmd = app.add_subcommand("numerology",
                                       "Subcarrier spacings with Doppler and position-error budgets");
    num.scenario.attach(num_cmd);
    num_cmd->add_option("--max-index", num.max_index, "largest grid index n (scs = 15 kHz * 2^n)");
    num_cmd->add_option("--ratio", num.ratio, "tolerated offset as a fraction of the spacing");
    num_cmd->add_option("--csv", num.csv, "write the table as CSV ('-' for stdout)");
    num_cmd->callback([&] { run_numerology(num); });

    RaCheckArgs ra;
    auto *ra_cmd = app.add_subcommand("ra-check", "Random-access timing feasibility");
    ra.scenario.attach(ra_cmd);
    ra_cmd->add_option("--rar-window", ra.rar_window_s, "RAR window, seconds");
    ra_cmd->add_option("--contention-timer", ra.contention_timer_s, "contention timer, seconds");
    ra_cmd->add_option("--preamble", ra.preamble, "preamble format name (0..3)");
    ra_cmd->add_option("--preamble-radius", ra.preamble_radius_m, "custom preamble cell radius, meters");
    ra_cmd->add_option("--differential", ra.differential_m,
                       "slant-range differential, meters (default: from scenario geometry)");
    ra_cmd->add_option("--rtt", ra.rtt_s, "satellite round trip, seconds (default: from scenario)");
    ra_cmd->add_option("--rar-policy", ra.rar_policy, "'fixed' or 'flagged' (control-channel bit)");
    ra_cmd->add_flag("--sat-link", ra.sat_link, "satellite link present (flagged policy)");
    ra_cmd->add_option("--rar-margin", ra.rar_margin_s, "headroom over the rtt, seconds");
    ra_cmd->add_option("--gnss-ta-error", ra.gnss_error_m,
                       "pre-compensate timing advance; value is the position estimation error, meters");
    ra_cmd->callback([&] { run_ra_check(ra); });

    HarqDimArgs dim;
    auto *dim_cmd = app.add_subcommand("harq-dim", "HARQ process, buffer, and control dimensioning");
    dim.scenario.attach(dim_cmd);
    dim_cmd->add_option("--tti", dim.tti_s, "transport block duration, seconds");
    dim_cmd->add_option("--proc-rx", dim.proc_rx_s, "receiver processing, seconds");
    dim_cmd->add_option("--proc-tx", dim.proc_tx_s, "transmitter processing, seconds");
    dim_cmd->add_option("--ack", dim.ack_s, "feedback air time, seconds");
    dim_cmd->add_option("--tp", dim.tp_s, "one-way propagation, seconds");
    dim_cmd->add_flag("--tp-from-scenario", dim.tp_from_scenario,
                      "derive propagation from the scenario instead of --tp");
    dim_cmd->add_option("--rate", dim.rate, "link rate, bits per second");
    dim_cmd->callback([&] { run_harq_dim(dim); });

    HarqSimArgs sim;
    auto *sim_cmd = app.add_subcommand("harq-sim", "Deterministic HARQ protocol simulation");
    sim.scenario.attach(sim_cmd);
    sim_cmd->add_option("--strategy", sim.strategy, "full|multibit|capped|replication");
    sim_cmd->add_option("--processes", sim.processes, "parallel HARQ processes");
    sim_cmd->add_option("--max-tx", sim.max_tx, "attempts per block before dropping");
    sim_cmd->add_option("--feedback-bits", sim.feedback_bits, "1 or 2 (default: per strategy)");
    sim_cmd->add_option("--k", sim.replication, "copies per block (replication strategy)");
    sim_cmd->add_option("--p", sim.attempt_p, "per-attempt success probabilities")->expected(-1);
    sim_cmd->add_option("--level-p0", sim.level_p[0], "multibit: next-attempt success after level 0")->expected(-1);
    sim_cmd->add_option("--level-p1", sim.level_p[1], "multibit: next-attempt success after level 1")->expected(-1);
    sim_cmd->add_option("--level-p2", sim.level_p[2], "multibit: next-attempt success after level 2")->expected(-1);
    sim_cmd->add_option("--level-p3", sim.level_p[3], "multibit: next-attempt success after level 3")->expected(-1);
    sim_cmd->add_option("--tti", sim.tti_s, "transport block duration, seconds");
    sim_cmd->add_option("--proc-rx", sim.proc_rx_s, "receiver processing, seconds");
    sim_cmd->add_option("--proc-tx", sim.proc_tx_s, "transmitter processing, seconds");
    sim_cmd->add_option("--ack", sim.ack_s, "feedback air time, seconds");
    sim_cmd->add_option("--tp", sim.tp_s, "one-way propagation, seconds");
    sim_cmd->add_flag("--tp-from-scenario", sim.tp_from_scenario,
                      "derive propagation from the scenario instead of --tp");
    sim_cmd->add_option("--rate", sim.rate, "link rate, bits per second");
    sim_cmd->add_option("--seed", sim.seed, "random seed");
    sim_cmd->add_option("--duration", sim.duration_s, "simulated time, seconds");
    sim_cmd->add_option("--event-log", sim.event_log, "write per-event CSV to this path");
    sim_cmd->callback([&] { run_harq_sim(sim); });

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Cartesian sweep of a subcommand's scalar inputs");
    sweep.scenario.attach(sweep_cmd);
    sweep_cmd->add_option("target", sweep.target, "subcommand to sweep")->required();
    sweep_cmd->add_option("--vary", sweep.ranges, "axis as key=start:stop:step")->type_name("KEY=A:B:STEP");
    sweep_cmd->add_option("--list", sweep.lists, "axis as key=v1,v2,...")->type_name("KEY=V,V,...");
    sweep_cmd->add_option("--out", sweep.out, "output CSV path ('-' for stdout)");
    sweep_cmd->callback([&] { run_sweep(sweep); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help is success, anything else is a usage error
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
