// SPDX-License-Identifier: Apache-2.0
//
// axmu: 802.11ax downlink SU/MU-MIMO sounding and capacity simulator
// Copyright (C) 2026 The axmu Authors
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

#ifndef AXMU_CAPACITY_HPP
#define AXMU_CAPACITY_HPP

#include "axmu/airtime.hpp"
#include "axmu/precoding.hpp"
#include "axmu/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace axmu
{

struct CsvTable;

struct LinkBudget
{
    double tx_power_dbm = 20.0;
    double noise_psd_dbm_hz = -174.0;
    double bandwidth_hz = 20e6;
    double noise_figure_db = 0.0;
    std::vector<double> pathloss_db; // per STA; missing entries mean 0 dB

    void validate() const;
    double noise_power_mw() const;
    double tx_power_mw() const { return db2lin(tx_power_dbm); }
    double gain(std::size_t sta) const;
};

// Per-subcarrier channel and steering of one STA.
using ToneChannels = std::vector<CMatrix>;
using ToneSteering = std::vector<SteeringMatrix>;

/// Full-power single-user capacity in bit/s. Power is split equally over the
/// streams of V and spread flat over the band; the evaluated tones are
/// averaged and scaled to the bandwidth.
double su_capacity(std::span<const CMatrix> h, std::span<const SteeringMatrix> v, const LinkBudget &budget,
                   std::size_t sta = 0);

enum class MuPrecoder
{
    StackedV,    // what deployed APs do
    ZeroForcing, // null-steering on the fed-back V; oracle only
};

/// Per-STA capacities with the AP transmitting to every STA at once, power
/// P/K per STA, and residual inter-user interference treated as noise.
std::vector<double> mu_capacity(std::span<const ToneChannels> h, std::span<const ToneSteering> v,
                                const LinkBudget &budget, MuPrecoder precoder = MuPrecoder::StackedV);

// Same quantity for single-stream STAs, from the explicit MMSE receive
// filter SINR instead of the log-det form.
std::vector<double> mu_capacity_mmse_sinr(std::span<const ToneChannels> h, std::span<const ToneSteering> v,
                                          const LinkBudget &budget);

struct CapacityTrace
{
    std::vector<std::vector<double>> capacity_bps; // [cycle][sta]
    double overhead_ratio = 0.0;
    double effective_capacity_bps = 0.0;

    std::size_t n_cycles() const { return capacity_bps.size(); }
};

double effective_capacity(const std::vector<std::vector<double>> &capacity_bps, double overhead_ratio);

CapacityTrace make_trace(std::vector<std::vector<double>> capacity_bps, double overhead_ratio);

// Appends rows: scenario_id, cycle, sta, capacity_bps, overhead_ratio,
// effective_capacity_bps.
void append_trace_rows(CsvTable &table, const std::string &scenario_id, const CapacityTrace &trace);
std::vector<std::string> trace_csv_header();

struct IdealizedSetup
{
    double reference_snr_db = 25.0; // full power, one stream
    int n_cycles = 200;
    bool fading = true; // unit-mean exponential power per STA and cycle
    std::uint64_t seed = 1;
};

/// Interference-free upper bound on MU gains: every STA sees
/// reference SNR / n_sta, and the cycle pays the sounding overhead of
/// an n_sta exchange (SU feedback for a single STA, MU otherwise).
CapacityTrace idealized_overhead_mode(const SoundingConfig &cfg, const PhyTiming &phy, const LinkBudget &budget,
                                      int n_sta, const IdealizedSetup &setup);

} // namespace axmu

#endif
