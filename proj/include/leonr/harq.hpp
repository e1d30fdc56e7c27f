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

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

// Parallel stop-and-wait HARQ over a high-latency link: closed-form
// dimensioning (process count, soft buffer, control field width) and a
// deterministic slot-level simulator covering four retransmission
// strategies.

namespace leonr {

enum class HarqStrategy
{
    full,        // 1-bit ACK/NACK, enough processes for continuous transmission
    multibit,    // 2-bit feedback grading the decoding margin; graded redundancy
    capped,      // 1-bit ACK/NACK with the process count held below the link optimum
    replication  // no feedback; every block sent k times back to back
};

inline const char *to_string(HarqStrategy s)
{
    switch (s) {
        case HarqStrategy::full: return "full";
        case HarqStrategy::multibit: return "multibit";
        case HarqStrategy::capped: return "capped";
        case HarqStrategy::replication: return "replication";
    }
    return "?";
}

/// Per-attempt decode success probabilities. attempt_success[i] is the
/// probability that attempt i+1 decodes; the last entry repeats for later
/// attempts. Under 2-bit feedback the reported margin level (0..3) selects
/// the column used for the following attempt, so coarse feedback maps to
/// the same table and richer feedback to higher-probability columns.
struct HarqErrorModel
{
    std::vector<double> attempt_success{1.0};
    std::array<std::vector<double>, 4> level_success{};
};

/// Full parameterization of one simulated HARQ machine.
///
/// Timing defaults follow the reference satellite link: 1 ms TTI, 4 ms
/// processing on each side, instantaneous feedback block, 8 ms one-way
/// propagation (a rounded 16 ms round trip).
struct HarqConfig
{
    double tti_s = 1e-3;
    double proc_rx_s = 4e-3;       // receiver processing after a block arrives
    double proc_tx_s = 4e-3;       // transmitter processing after feedback arrives
    double ack_duration_s = 0.0;   // air time of the feedback block
    double propagation_s = 8e-3;   // one-way propagation
    int num_processes = 24;
    int feedback_bits = 1;         // 1 or 2
    int max_transmissions = 4;     // attempts per block before dropping
    HarqStrategy strategy = HarqStrategy::full;
    int replication_factor = 1;    // copies per block, replication only
    double link_rate_bits_per_s = 100e6;
    HarqErrorModel error_model{};
    std::uint64_t seed = 1;
};

/// Simulation outcome. Identical (config, seed, duration) inputs produce a
/// bit-identical report.
struct HarqReport
{
    std::uint64_t offered_tb = 0;
    std::uint64_t delivered_tb = 0;
    std::uint64_t dropped_tb = 0;
    double utilization = 0.0;         // fraction of slots carrying a block
    double goodput_tb_per_s = 0.0;
    double mean_latency_s = 0.0;      // first transmission to feedback receipt
    double p95_latency_s = 0.0;
    double peak_soft_buffer_bits = 0.0;
    std::vector<std::uint64_t> retransmission_histogram;  // [n] = blocks finishing after n transmissions

    bool operator==(const HarqReport &) const = default;
};

/// Time from the end of a block until its transmitter can act on the
/// feedback: 2 T_p + T_rx + T_tx + T_ack. This is the stall one process
/// bridges; a block may go out every tti once enough processes cover it.
inline double harq_cycle_time(const HarqConfig &cfg)
{
    return 2.0 * cfg.propagation_s + cfg.proc_rx_s + cfg.proc_tx_s + cfg.ack_duration_s;
}

/// Fewest parallel processes that keep the link continuously loaded:
/// ceil(t_harq / tti), and never less than one.
inline int min_processes(double t_harq_s, double tti_s)
{
    if (!(tti_s > 0.0))
        throw std::domain_error("min_processes: tti must be > 0");
    // tolerate rounding noise in the quotient so exact multiples stay exact
    const double ratio = t_harq_s / tti_s;
    const long n = static_cast<long>(std::ceil(ratio - 1e-9));
    return static_cast<int>(std::max(1L, n));
}

/// Receiver soft-buffer demand: one in-flight block of soft bits per
/// process, so num_processes * tti * link_rate bits.
inline double buffer_requirement(int num_processes, double tti_s, double link_rate_bits_per_s)
{
    if (num_processes < 1)
        throw std::domain_error("buffer_requirement: need at least one process");
    if (!(tti_s > 0.0))
        throw std::domain_error("buffer_requirement: tti must be > 0");
    if (link_rate_bits_per_s < 0.0)
        throw std::domain_error("buffer_requirement: link rate must be >= 0");
    return num_processes * tti_s * link_rate_bits_per_s;
}

/// Bits the downlink control information needs to address a process.
inline int dci_process_field_width(int num_processes)
{
    if (num_processes < 1)
        throw std::domain_error("dci_process_field_width: need at least one process");
    return std::bit_width(static_cast<unsigned>(num_processes - 1));
}

/// Link utilization of an error-free run: each process transmits for one
/// tti out of every (t_harq + tti) cycle, saturating at 1.
inline double theoretical_utilization(int num_processes, double t_harq_s, double tti_s)
{
    if (num_processes < 1)
        throw std::domain_error("theoretical_utilization: need at least one process");
    if (!(tti_s > 0.0))
        throw std::domain_error("theoretical_utilization: tti must be > 0");
    return std::min(1.0, num_processes * tti_s / (t_harq_s + tti_s));
}

/// Rejects configurations the simulator cannot run meaningfully, naming the
/// offending field. Called by simulate() before anything else.
inline void validate_harq(const HarqConfig &cfg)
{
    const auto check_probs = [](const std::vector<double> &v, const char *name) {
        if (v.empty())
            throw std::invalid_argument(std::string("harq config: ") + name + " must be non-empty");
        for (double p : v)
            if (!(p >= 0.0) || !(p <= 1.0))
                throw std::invalid_argument(std::string("harq config: ") + name +
                                            " probabilities must lie in [0, 1]");
    };

    if (!(cfg.tti_s > 0.0))
        throw std::invalid_argument("harq config: tti_s must be > 0");
    if (cfg.proc_rx_s < 0.0 || cfg.proc_tx_s < 0.0 || cfg.ack_duration_s < 0.0 ||
        cfg.propagation_s < 0.0)
        throw std::invalid_argument("harq config: durations must be >= 0");
    if (cfg.num_processes < 1)
        throw std::invalid_argument("harq config: num_processes must be >= 1");
    if (cfg.max_transmissions < 1)
        throw std::invalid_argument("harq config: max_transmissions must be >= 1");
    if (cfg.replication_factor < 1)
        throw std::invalid_argument("harq config: replication_factor must be >= 1");
    if (cfg.link_rate_bits_per_s < 0.0)
        throw std::invalid_argument("harq config: link_rate_bits_per_s must be >= 0");
    if (cfg.feedback_bits != 1 && cfg.feedback_bits != 2)
        throw std::invalid_argument("harq config: feedback_bits must be 1 or 2");

    check_probs(cfg.error_model.attempt_success, "attempt_success");

    switch (cfg.strategy) {
        case HarqStrategy::multibit:
            if (cfg.feedback_bits != 2)
                throw std::invalid_argument("harq config: multibit strategy requires 2 feedback bits");
            if (cfg.replication_factor != 1)
                throw std::invalid_argument("harq config: replication_factor is for the replication strategy");
            for (const auto &column : cfg.error_model.level_success)
                check_probs(column, "level_success");
            break;
        case HarqStrategy::full:
        case HarqStrategy::capped:
            if (cfg.feedback_bits != 1)
                throw std::invalid_argument("harq config: 1-bit strategies require feedback_bits = 1");
            if (cfg.replication_factor != 1)
                throw std::invalid_argument("harq config: replication_factor is for the replication strategy");
            break;
        case HarqStrategy::replication:
            break;
    }
}

namespace detail {

// 53-bit uniform in [0, 1); independent of the standard library's
// distribution internals so runs reproduce across platforms.
inline double canonical_uniform(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double attempt_probability(const std::vector<double> &column, int attempt_1based)
{
    const std::size_t idx = std::min<std::size_t>(attempt_1based, column.size()) - 1;
    return column[idx];
}

struct SimEvent
{
    double time_s;
    std::uint64_t seq;  // emission order, tie-breaker for equal timestamps
    int process_id;
    const char *event;
    int attempt;
    std::string outcome;
};

} // namespace detail

/// Runs one HARQ machine against an always-backlogged source for the given
/// duration. New blocks stop at the horizon, in-flight blocks drain to
/// completion, and every offered block ends up delivered or dropped.
/// Transmissions are slot-aligned; utilization counts slots inside the
/// horizon only. Passing an event_log stream writes one
/// `time_s,process_id,event,attempt,outcome` line per event in time order.
inline HarqReport simulate(const HarqConfig &cfg, double duration_s,
                           std::ostream *event_log = nullptr)
{
    validate_harq(cfg);
    const double t_harq = harq_cycle_time(cfg);
    if (!(duration_s >= 10.0 * (t_harq + cfg.tti_s)))
        throw std::invalid_argument("simulate: duration must cover at least 10 harq cycles");

    const double tti = cfg.tti_s;
    const long horizon_slots = static_cast<long>(std::floor(duration_s / tti + 1e-9));
    // slots from the end of a block until its transmitter may act on feedback
    const long feedback_slots = static_cast<long>(std::ceil(t_harq / tti - 1e-9));
    // latency endpoint offset from the transmit slot start: feedback receipt
    const double feedback_offset =
        tti + 2.0 * cfg.propagation_s + cfg.proc_rx_s + cfg.ack_duration_s;
    const double tb_bits = tti * cfg.link_rate_bits_per_s;

    std::mt19937_64 success_rng(cfg.seed);
    std::mt19937_64 margin_rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);

    HarqReport report;
    const std::size_t hist_size =
        static_cast<std::size_t>(std::max(cfg.max_transmissions, cfg.replication_factor)) + 1;
    report.retransmission_histogram.assign(hist_size, 0);

    std::vector<double> latencies;
    std::vector<detail::SimEvent> events;
    std::uint64_t event_seq = 0;
    const auto log_event = [&](double t, int pid, const char *ev, int attempt, std::string outcome) {
        if (event_log)
            events.push_back({t, event_seq++, pid, ev, attempt, std::move(outcome)});
    };

    long busy_slots = 0;
    int holding_soft = 0;       // processes whose failed block sits in the soft buffer
    int peak_holding = 0;

    if (cfg.strategy == HarqStrategy::replication) {
        // No feedback loop: groups of k copies ride back to back and the
        // link never stalls. Groups are laid on processes round-robin.
        const int copies = cfg.replication_factor;
        long slot = 0;
        std::uint64_t group = 0;
        while (slot < horizon_slots) {
            const int pid = static_cast<int>(group % static_cast<std::uint64_t>(cfg.num_processes));
            const double group_start = slot * tti;
            bool decoded = false;
            bool holding = false;
            for (int copy = 1; copy <= copies; ++copy, ++slot) {
                if (slot < horizon_slots)
                    ++busy_slots;
                log_event(slot * tti, pid, "tx", copy, "-");
                const double u = detail::canonical_uniform(success_rng);
                const bool ok = u < detail::attempt_probability(cfg.error_model.attempt_success, copy);
                if (!ok && !decoded && !holding) {
                    holding = true;
                    peak_holding = std::max(peak_holding, ++holding_soft);
                }
                decoded = decoded || ok;
            }
            // delivery is judged once the last copy lands at the receiver
            const double settle = slot * tti + cfg.propagation_s;
            ++report.offered_tb;
            report.retransmission_histogram[static_cast<std::size_t>(copies)] += 1;
            if (holding)
                --holding_soft;
            if (decoded) {
                ++report.delivered_tb;
                latencies.push_back(settle - group_start);
                log_event(settle, pid, "deliver", copies, "ok");
            } else {
                ++report.dropped_tb;
                log_event(settle, pid, "drop", copies, "fail");
            }
            ++group;
        }
    } else {
        struct Process
        {
            long available_slot = 0;  // earliest slot it may transmit
            bool retx_pending = false;
            int attempts = 0;         // attempts spent on the current block
            long first_tx_slot = 0;
            double next_p = 0.0;      // success probability of the next attempt
            bool holding = false;     // receiver holds this block's soft bits
        };
        std::vector<Process> procs(static_cast<std::size_t>(cfg.num_processes));
        const auto &attempt_col = cfg.error_model.attempt_success;

        int rr_cursor = cfg.num_processes - 1;
        long slot = 0;
        std::uint64_t in_flight_retx = 0;
        while (true) {
            // round-robin scan for a process allowed to transmit this slot
            int chosen = -1;
            for (int i = 1; i <= cfg.num_processes; ++i) {
                const int idx = (rr_cursor + i) % cfg.num_processes;
                const Process &p = procs[static_cast<std::size_t>(idx)];
                if (p.available_slot > slot)
                    continue;
                if (p.retx_pending || slot < horizon_slots) {
                    chosen = idx;
                    break;
                }
            }
            if (chosen < 0) {
                if (slot >= horizon_slots && in_flight_retx == 0)
                    break;  // drained
                long next = std::numeric_limits<long>::max();
                for (const Process &p : procs)
                    if (p.retx_pending || slot < horizon_slots)
                        next = std::min(next, p.available_slot);
                if (next == std::numeric_limits<long>::max())
                    break;
                slot = next;
                continue;
            }

            rr_cursor = chosen;
            Process &p = procs[static_cast<std::size_t>(chosen)];
            const bool is_retx = p.retx_pending;
            if (!is_retx) {
                p.attempts = 0;
                p.first_tx_slot = slot;
                p.next_p = detail::attempt_probability(attempt_col, 1);
                ++report.offered_tb;
            } else {
                --in_flight_retx;
                p.retx_pending = false;
            }
            ++p.attempts;
            if (slot < horizon_slots)
                ++busy_slots;
            log_event(slot * tti, chosen, "tx", p.attempts, "-");

            const double u = detail::canonical_uniform(success_rng);
            const bool ok = u < p.next_p;
            const double feedback_time = slot * tti + feedback_offset;
            p.available_slot = slot + 1 + feedback_slots;

            if (ok) {
                ++report.delivered_tb;
                report.retransmission_histogram[static_cast<std::size_t>(p.attempts)] += 1;
                latencies.push_back(feedback_time - p.first_tx_slot * tti);
                if (p.holding) {
                    p.holding = false;
                    --holding_soft;
                }
                log_event(feedback_time, chosen, "feedback", p.attempts, "ack");
                log_event(feedback_time, chosen, "deliver", p.attempts, "ok");
            } else {
                std::string outcome = "nack";
                if (cfg.strategy == HarqStrategy::multibit) {
                    const int level = static_cast<int>(margin_rng() & 3u);
                    outcome = "level" + std::to_string(level);
                    p.next_p = detail::attempt_probability(
                        cfg.error_model.level_success[static_cast<std::size_t>(level)],
                        p.attempts + 1);
                } else {
                    p.next_p = detail::attempt_probability(attempt_col, p.attempts + 1);
                }
                if (!p.holding) {
                    p.holding = true;
                    peak_holding = std::max(peak_holding, ++holding_soft);
                }
                log_event(feedback_time, chosen, "feedback", p.attempts, outcome);
                if (p.attempts >= cfg.max_transmissions) {
                    ++report.dropped_tb;
                    report.retransmission_histogram[static_cast<std::size_t>(p.attempts)] += 1;
                    p.holding = false;
                    --holding_soft;
                    log_event(feedback_time, chosen, "drop", p.attempts, "fail");
                } else {
                    p.retx_pending = true;
                    ++in_flight_retx;
                }
            }
            ++slot;
        }
    }

    report.utilization = horizon_slots > 0
                             ? static_cast<double>(busy_slots) / static_cast<double>(horizon_slots)
                             : 0.0;
    report.goodput_tb_per_s = static_cast<double>(report.delivered_tb) / duration_s;
    report.peak_soft_buffer_bits = peak_holding * tb_bits;

    if (!latencies.empty()) {
        double sum = 0.0;
        for (double l : latencies)
            sum += l;
        report.mean_latency_s = sum / static_cast<double>(latencies.size());
        std::sort(latencies.begin(), latencies.end());
        const std::size_t idx = static_cast<std::size_t>(
            std::ceil(0.95 * static_cast<double>(latencies.size()))) - 1;
        report.p95_latency_s = latencies[std::min(idx, latencies.size() - 1)];
    }

    if (event_log) {
        std::stable_sort(events.begin(), events.end(),
                         [](const detail::SimEvent &a, const detail::SimEvent &b) {
                             if (a.time_s != b.time_s)
                                 return a.time_s < b.time_s;
                             return a.seq < b.seq;
                         });
        char line[128];
        for (const detail::SimEvent &e : events) {
            std::snprintf(line, sizeof(line), "%.6f,%d,%s,%d,%s\n", e.time_s, e.process_id,
                          e.event, e.attempt, e.outcome.c_str());
            (*event_log) << line;
        }
    }
    return report;
}

} // namespace leonr
