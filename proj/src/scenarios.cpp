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

#include "axmu/scenarios.hpp"

#include "axmu/parallel.hpp"
#include "axmu/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace axmu
{

namespace
{

// Scenario-id namespaces, so no two work items anywhere share a stream.
constexpr std::uint64_t kSeparationIds = 1'000'000;
constexpr std::uint64_t kDistanceIds = 2'000'000;
constexpr std::uint64_t kGuidelineIds = 3'000'000;
constexpr std::uint64_t kAoaStream = 0xA0A;

struct MeanSe
{
    double mean;
    double se;
};

MeanSe mean_se(const std::vector<double> &x)
{
    double m = 0;
    for (double v : x)
        m += v;
    m /= static_cast<double>(x.size());
    if (x.size() < 2)
        return {m, 0.0};
    double ss = 0;
    for (double v : x)
        ss += (v - m) * (v - m);
    return {m, std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()))};
}

ScenarioSpec pair_spec(Regime regime, double distance, double separation, const SweepSetup &s, std::uint64_t id)
{
    ScenarioSpec spec;
    spec.regime = regime;
    spec.geometry = {StaGeometry{distance, 0.0, s.sta_dims, 0}, StaGeometry{distance, separation, s.sta_dims, 1}};
    spec.sta_dims = s.sta_dims;
    spec.codebooks = {s.codebook};
    spec.n_cycles = s.n_cycles;
    spec.master_seed = s.master_seed;
    spec.scenario_id = id;
    return spec;
}

// STA 0 alone versus both STAs together.
SeparationPoint summarise_pair(double separation, const std::vector<CycleCapacities> &cycles)
{
    std::vector<double> su, mu;
    for (const auto &c : cycles)
    {
        su.push_back(c.su_bps[0][0]);
        mu.push_back(c.mu_bps[0][0] + c.mu_bps[0][1]);
    }
    const auto s = mean_se(su);
    const auto m = mean_se(mu);
    return {separation, s.mean, s.se, m.mean, m.se};
}

} // namespace

void ScenarioSpec::validate(const ChannelConfig &channel) const
{
    if (geometry.empty())
        throw std::invalid_argument("ScenarioSpec: no STAs");
    if (sta_dims < 1 || sta_dims > 2)
        throw std::invalid_argument("ScenarioSpec: sta_dims must be 1 or 2");
    if (n_cycles < 1)
        throw std::invalid_argument("ScenarioSpec: n_cycles must be >= 1");
    if (static_cast<int>(geometry.size()) * sta_dims > channel.n_tx)
        throw std::invalid_argument("ScenarioSpec: more streams than transmit antennas");
    if (codebooks.empty())
        throw std::invalid_argument("ScenarioSpec: no codebook selected");
    for (int cb : codebooks)
        if (cb != 0 && cb != 1)
            throw std::invalid_argument("ScenarioSpec: codebook must be 0 or 1");
    for (const auto &g : geometry)
    {
        g.validate();
        if (g.n_rx != sta_dims)
            throw std::invalid_argument("ScenarioSpec: STA antenna count differs from sta_dims");
        if (regime == Regime::LoS && g.distance_m > channel.breakpoint_m)
            throw std::invalid_argument("ScenarioSpec: LoS regime requires distances within the breakpoint");
    }
}

CycleCapacities evaluate_cycle(const ScenarioSpec &spec, const SimContext &ctx, std::size_t cycle)
{
    const std::uint64_t seed = child_seed(spec.master_seed, spec.scenario_id, cycle);
    const ClusterParam clusters = coupled_clusters(spec.geometry, ctx.channel, child_seed(seed, kAoaStream));
    const ChannelModel model(spec.geometry, clusters, spec.regime, ctx.channel);
    const ChannelRealization real = model.draw(seed);

    LinkBudget budget = ctx.budget;
    budget.pathloss_db = real.pathloss_db;

    const std::size_t n_sta = real.n_sta();
    std::vector<ToneSteering> v(n_sta);
    for (std::size_t k = 0; k < n_sta; ++k)
        for (const auto &h : real.h[k])
            v[k].push_back(svd_v(h, spec.sta_dims));

    CycleCapacities out;
    for (int cb : spec.codebooks)
    {
        const AngleBits su_bits = angle_bit_widths(FeedbackType::SU, cb);
        const AngleBits mu_bits = angle_bit_widths(FeedbackType::MU, cb);
        std::vector<double> su(n_sta);
        std::vector<ToneSteering> vq(n_sta);
        for (std::size_t k = 0; k < n_sta; ++k)
        {
            su[k] = su_capacity(real.h[k], requantize(v[k], su_bits), budget, k);
            vq[k] = requantize(v[k], mu_bits);
        }
        out.su_bps.push_back(std::move(su));
        out.mu_bps.push_back(mu_capacity(real.h, vq, budget));
    }
    return out;
}

std::vector<std::vector<CycleCapacities>> run_scenarios(const std::vector<ScenarioSpec> &specs, const SimContext &ctx)
{
    ctx.channel.validate();
    ctx.budget.validate();
    std::vector<std::size_t> offset{0};
    for (const auto &s : specs)
    {
        s.validate(ctx.channel);
        offset.push_back(offset.back() + static_cast<std::size_t>(s.n_cycles));
    }

    std::vector<std::vector<CycleCapacities>> out(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i)
        out[i].resize(static_cast<std::size_t>(specs[i].n_cycles));

    parallel_for(offset.back(), ctx.workers,
                 [&](std::size_t item)
                 {
                     const auto s = static_cast<std::size_t>(
                         std::upper_bound(offset.begin(), offset.end(), item) - offset.begin() - 1);
                     const std::size_t cycle = item - offset[s];
                     out[s][cycle] = evaluate_cycle(specs[s], ctx, cycle);
                 });
    return out;
}

std::vector<SeparationPoint> sweep_separation(const SweepSetup &setup, const SimContext &ctx)
{
    if (!(setup.separation_step_deg > 0))
        throw std::invalid_argument("sweep_separation: step must be positive");
    const auto n = static_cast<std::size_t>(std::floor(180.0 / setup.separation_step_deg + 1e-9)) + 1;

    std::vector<ScenarioSpec> specs;
    for (std::size_t i = 0; i < n; ++i)
        specs.push_back(pair_spec(Regime::LoS, setup.los_distance_m, static_cast<double>(i) * setup.separation_step_deg,
                                  setup, kSeparationIds + i));
    const auto runs = run_scenarios(specs, ctx);

    std::vector<SeparationPoint> curve;
    for (std::size_t i = 0; i < n; ++i)
        curve.push_back(summarise_pair(specs[i].geometry[1].los_aod_deg, runs[i]));
    return curve;
}

std::vector<DistancePoint> sweep_distance(const SweepSetup &setup, const SimContext &ctx)
{
    if (setup.n_separations < 1 || setup.distances_m.empty())
        throw std::invalid_argument("sweep_distance: empty grid");
    const auto n_sep = static_cast<std::size_t>(setup.n_separations);
    const double step = 180.0 / static_cast<double>(n_sep);

    std::vector<ScenarioSpec> specs;
    for (std::size_t d = 0; d < setup.distances_m.size(); ++d)
        for (std::size_t i = 0; i < n_sep; ++i)
            specs.push_back(pair_spec(Regime::NLoS, setup.distances_m[d], static_cast<double>(i) * step, setup,
                                      kDistanceIds + d * 10'000 + i));
    const auto runs = run_scenarios(specs, ctx);

    std::vector<DistancePoint> out;
    for (std::size_t d = 0; d < setup.distances_m.size(); ++d)
    {
        DistancePoint p;
        p.distance_m = setup.distances_m[d];
        std::size_t mu_dom = 0;
        for (std::size_t i = 0; i < n_sep; ++i)
        {
            const std::size_t s = d * n_sep + i;
            p.separations.push_back(summarise_pair(specs[s].geometry[1].los_aod_deg, runs[s]));
            mu_dom += p.separations.back().su_dominant() ? 0 : 1;
            p.mean_ratio += p.separations.back().ratio();
        }
        p.mu_dominant_fraction = static_cast<double>(mu_dom) / static_cast<double>(n_sep);
        p.mean_ratio /= static_cast<double>(n_sep);
        out.push_back(std::move(p));
    }
    return out;
}

DominanceStats dominance_stats(const std::vector<SeparationPoint> &curve)
{
    if (curve.empty())
        throw std::invalid_argument("dominance_stats: empty curve");
    DominanceStats st;
    st.n_points = curve.size();
    double best = curve.front().ratio();
    st.argmin_ratio_deg = curve.front().separation_deg;
    for (const auto &p : curve)
    {
        if (p.su_dominant())
        {
            ++st.n_su_dominant;
            if (p.separation_deg <= 12.0 + 1e-9 || p.separation_deg >= 168.0 - 1e-9)
                ++st.n_su_dominant_edges;
        }
        if (p.ratio() < best)
        {
            best = p.ratio();
            st.argmin_ratio_deg = p.separation_deg;
        }
    }
    st.su_dominant_fraction = static_cast<double>(st.n_su_dominant) / static_cast<double>(st.n_points);

    std::size_t lo = 0;
    while (lo < curve.size() && curve[lo].su_dominant())
        ++lo;
    if (lo > 0)
        st.near_zero_width_deg = curve[lo - 1].separation_deg - curve.front().separation_deg;
    std::size_t hi = curve.size();
    while (hi > 0 && curve[hi - 1].su_dominant())
        --hi;
    if (hi < curve.size())
        st.near_180_width_deg = curve.back().separation_deg - curve[hi].separation_deg;
    return st;
}

std::string to_string(GuidelineRow row)
{
    switch (row)
    {
    case GuidelineRow::LNear: return "L-near";
    case GuidelineRow::LFar: return "L-far";
    case GuidelineRow::NSmall: return "N-small";
    case GuidelineRow::NLarge: return "N-large";
    case GuidelineRow::NMixed: return "N-mixed";
    }
    return "?";
}

bool mu_verdict(double mu_eff_bps, double su_eff_bps) { return mu_eff_bps > su_eff_bps; }

std::size_t GuidelineTable::on_count() const
{
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto &c) { return c.on; }));
}

const GuidelineCell &GuidelineTable::at(GuidelineRow row, int sta_dims, int codebook) const
{
    for (const auto &c : cells)
        if (c.row == row && c.sta_dims == sta_dims && c.codebook == codebook)
            return c;
    throw std::out_of_range("GuidelineTable: no such cell");
}

ScenarioSpec guideline_scenario(GuidelineRow row, int sta_dims, const GuidelineSetup &setup)
{
    ScenarioSpec spec;
    spec.sta_dims = sta_dims;
    spec.codebooks = {0, 1};
    spec.n_cycles = setup.n_cycles;
    spec.master_seed = setup.master_seed;
    spec.scenario_id = kGuidelineIds + static_cast<std::uint64_t>(row) * 10 + static_cast<std::uint64_t>(sta_dims);

    std::vector<double> aods;
    std::vector<double> dist;
    switch (row)
    {
    case GuidelineRow::LNear:
        spec.regime = Regime::LoS;
        aods = setup.near_aods_deg;
        dist.assign(aods.size(), setup.los_distance_m);
        break;
    case GuidelineRow::LFar:
        spec.regime = Regime::LoS;
        aods = setup.far_aods_deg;
        dist.assign(aods.size(), setup.los_distance_m);
        break;
    case GuidelineRow::NSmall:
    case GuidelineRow::NLarge:
        spec.regime = Regime::NLoS;
        aods = setup.nlos_aods_deg;
        dist.assign(aods.size(), row == GuidelineRow::NSmall ? setup.small_distance_m : setup.large_distance_m);
        break;
    case GuidelineRow::NMixed:
        spec.regime = Regime::NLoS;
        aods = setup.nlos_aods_deg;
        for (std::size_t k = 0; k < aods.size(); ++k)
            dist.push_back(k < aods.size() / 2 ? setup.small_distance_m : setup.large_distance_m);
        break;
    }
    if (aods.size() != 4)
        throw std::invalid_argument("guideline: every row needs exactly four AoDs");
    for (std::size_t k = 0; k < aods.size(); ++k)
        spec.geometry.push_back(StaGeometry{dist[k], aods[k], sta_dims, static_cast<std::uint32_t>(k)});
    return spec;
}

GuidelineTable guideline_table(const GuidelineSetup &setup, const SoundingConfig &sounding, const PhyTiming &phy,
                               const SimContext &ctx)
{
    constexpr std::array<int, 2> dims{1, 2};
    std::vector<ScenarioSpec> specs;
    for (auto row : kGuidelineRows)
        for (int d : dims)
            specs.push_back(guideline_scenario(row, d, setup));
    const auto runs = run_scenarios(specs, ctx);

    GuidelineTable table;
    for (std::size_t s = 0; s < specs.size(); ++s)
    {
        const auto &spec = specs[s];
        const auto row = kGuidelineRows[s / dims.size()];
        const std::size_t n_sta = spec.geometry.size();
        // The SU baseline may only pick a near STA when the set is mixed.
        std::vector<std::size_t> eligible;
        for (std::size_t k = 0; k < n_sta; ++k)
            if (row != GuidelineRow::NMixed || spec.geometry[k].distance_m == setup.small_distance_m)
                eligible.push_back(k);

        for (std::size_t c = 0; c < spec.codebooks.size(); ++c)
        {
            const int cb = spec.codebooks[c];
            const double n = static_cast<double>(runs[s].size());
            std::vector<double> su_mean(n_sta, 0.0);
            double mu_mean = 0;
            for (const auto &cyc : runs[s])
            {
                for (std::size_t k = 0; k < n_sta; ++k)
                {
                    su_mean[k] += cyc.su_bps[c][k] / n;
                    mu_mean += cyc.mu_bps[c][k] / n;
                }
            }

            SoundingConfig su_cfg = sounding;
            su_cfg.n_rx = spec.sta_dims;
            su_cfg.n_ss_per_sta = spec.sta_dims;
            su_cfg.codebook_info = cb;
            su_cfg.n_sta = 1;
            su_cfg.feedback_type = FeedbackType::SU;
            SoundingConfig mu_cfg = su_cfg;
            mu_cfg.n_sta = static_cast<int>(n_sta);
            mu_cfg.feedback_type = FeedbackType::MU;

            GuidelineCell cell;
            cell.row = row;
            cell.sta_dims = spec.sta_dims;
            cell.codebook = cb;
            cell.su_sta = *std::max_element(eligible.begin(), eligible.end(),
                                            [&](auto a, auto b) { return su_mean[a] < su_mean[b]; });
            cell.su_raw_bps = su_mean[cell.su_sta];
            cell.mu_raw_bps = mu_mean;
            cell.su_overhead_ratio = sounding_overhead(su_cfg, phy).overhead_ratio;
            cell.mu_overhead_ratio = sounding_overhead(mu_cfg, phy).overhead_ratio;
            cell.su_eff_bps = (1.0 - cell.su_overhead_ratio) * cell.su_raw_bps;
            cell.mu_eff_bps = (1.0 - cell.mu_overhead_ratio) * cell.mu_raw_bps;
            cell.margin_bps = cell.mu_eff_bps - cell.su_eff_bps;
            cell.on = mu_verdict(cell.mu_eff_bps, cell.su_eff_bps);
            table.cells.push_back(cell);
        }
    }
    // Row-major with codebook varying fastest inside each antenna setup.
    return table;
}

} // namespace axmu
