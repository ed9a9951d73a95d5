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

#ifndef AXMU_SCENARIOS_HPP
#define AXMU_SCENARIOS_HPP

#include "axmu/airtime.hpp"
#include "axmu/capacity.hpp"
#include "axmu/channel.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace axmu
{

struct ScenarioSpec
{
    Regime regime = Regime::LoS;
    std::vector<StaGeometry> geometry;
    int sta_dims = 1; // receive antennas = streams per STA
    std::vector<int> codebooks{0};
    int n_cycles = 200;
    std::uint64_t master_seed = 1;
    std::uint64_t scenario_id = 0;

    void validate(const ChannelConfig &channel) const;
};

// Capacities of one channel draw; indices are [codebook][sta].
struct CycleCapacities
{
    std::vector<std::vector<double>> su_bps; // each STA served alone at full power
    std::vector<std::vector<double>> mu_bps; // all STAs served together
};

// Everything the Monte Carlo engine needs besides the scenario itself.
struct SimContext
{
    ChannelConfig channel;
    LinkBudget budget; // per-STA path loss is filled in from the geometry
    unsigned workers = 1;
};

CycleCapacities evaluate_cycle(const ScenarioSpec &spec, const SimContext &ctx, std::size_t cycle);

/// All cycles of several scenarios, spread over ctx.workers threads.
/// Results come back in input order and do not depend on the worker count.
std::vector<std::vector<CycleCapacities>> run_scenarios(const std::vector<ScenarioSpec> &specs, const SimContext &ctx);

struct SweepSetup
{
    int n_cycles = 200;
    std::uint64_t master_seed = 1;
    int sta_dims = 1;
    int codebook = 0;
    double los_distance_m = 8.0;
    double separation_step_deg = 2.0; // 0..180 inclusive
    std::vector<double> distances_m{10, 20, 30, 40, 50, 60};
    int n_separations = 60; // equally spaced over [0, 180)
};

struct SeparationPoint
{
    double separation_deg = 0;
    double su_mean_bps = 0;
    double su_se_bps = 0;
    double mu_mean_bps = 0; // sum over both STAs
    double mu_se_bps = 0;

    double ratio() const { return mu_mean_bps / su_mean_bps; }
    bool su_dominant() const { return !(mu_mean_bps > su_mean_bps); }
};

struct DistancePoint
{
    double distance_m = 0;
    double mu_dominant_fraction = 0;
    double mean_ratio = 0;
    std::vector<SeparationPoint> separations;
};

std::vector<SeparationPoint> sweep_separation(const SweepSetup &setup, const SimContext &ctx);
std::vector<DistancePoint> sweep_distance(const SweepSetup &setup, const SimContext &ctx);

struct DominanceStats
{
    std::size_t n_points = 0;
    std::size_t n_su_dominant = 0;
    double su_dominant_fraction = 0;
    double near_zero_width_deg = 0;    // contiguous SU-dominant run from the first point
    double near_180_width_deg = 0;     // contiguous SU-dominant run into the last point
    std::size_t n_su_dominant_edges = 0; // SU-dominant points in [0,12] and [168,180]
    double argmin_ratio_deg = 0;
};

DominanceStats dominance_stats(const std::vector<SeparationPoint> &curve);

enum class GuidelineRow
{
    LNear,
    LFar,
    NSmall,
    NLarge,
    NMixed,
};

inline constexpr std::array<GuidelineRow, 5> kGuidelineRows{GuidelineRow::LNear, GuidelineRow::LFar,
                                                             GuidelineRow::NSmall, GuidelineRow::NLarge,
                                                             GuidelineRow::NMixed};

std::string to_string(GuidelineRow row);

struct GuidelineSetup
{
    int n_cycles = 200;
    std::uint64_t master_seed = 1;
    double los_distance_m = 8.0;
    double small_distance_m = 4.0;
    double large_distance_m = 50.0;
    std::vector<double> near_aods_deg{0, 10, 20, 30};
    // sin(aod) on the 1/4 grid: mutually orthogonal 8-element steering vectors
    std::vector<double> far_aods_deg{0, 14.4775121859, 30, 48.5903778907};
    std::vector<double> nlos_aods_deg{0, 14.4775121859, 30, 48.5903778907};
};

struct GuidelineCell
{
    GuidelineRow row = GuidelineRow::LNear;
    int sta_dims = 1;
    int codebook = 0;
    bool on = false;
    double mu_eff_bps = 0;
    double su_eff_bps = 0;
    double margin_bps = 0; // mu - su
    double mu_raw_bps = 0;
    double su_raw_bps = 0;
    double su_overhead_ratio = 0;
    double mu_overhead_ratio = 0;
    std::size_t su_sta = 0; // STA served by the SU baseline
};

// ON only for a strict effective-capacity gain.
bool mu_verdict(double mu_eff_bps, double su_eff_bps);

struct GuidelineTable
{
    std::vector<GuidelineCell> cells; // row-major: 5 rows x {1x1 cb0, 1x1 cb1, 2x2 cb0, 2x2 cb1}

    std::size_t on_count() const;
    const GuidelineCell &at(GuidelineRow row, int sta_dims, int codebook) const;
};

GuidelineTable guideline_table(const GuidelineSetup &setup, const SoundingConfig &sounding, const PhyTiming &phy,
                               const SimContext &ctx);

// Row geometry of the guideline table, four STAs with ids 0..3.
ScenarioSpec guideline_scenario(GuidelineRow row, int sta_dims, const GuidelineSetup &setup);

} // namespace axmu

#endif
