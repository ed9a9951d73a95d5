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

#include "axmu/commands.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace axmu
{

namespace
{

std::string fmt(double v) { return format_double(v); }

std::filesystem::path output_path(const RunConfig &cfg, const std::string &file)
{
    std::filesystem::create_directories(cfg.out_dir);
    return std::filesystem::path(cfg.out_dir) / file;
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream os(path, std::ios::binary);
    os << text;
    if (!os)
        throw std::runtime_error("write failed: " + path.string());
}

std::string dims_label(int d) { return std::to_string(d) + "x" + std::to_string(d); }

} // namespace

SimContext sim_context(const RunConfig &cfg)
{
    SimContext ctx;
    ctx.channel = cfg.channel;
    ctx.channel.n_tx = cfg.sounding.n_tx;
    ctx.budget = cfg.link;
    ctx.workers = cfg.workers;
    return ctx;
}

CsvTable overhead_table(const RunConfig &cfg)
{
    CsvTable t;
    t.header = {"n_sta",       "feedback_type", "codebook", "n_ss_per_sta",  "report_bits",       "ndpa_us",
                "ndp_us",      "bfrp_us",       "feedback_us", "sifs_total_us", "total_overhead_us", "overhead_ratio"};
    for (int n : {1, 2, 4, 8})
    {
        SoundingConfig s = cfg.sounding;
        s.n_sta = n;
        s.feedback_type = n == 1 ? FeedbackType::SU : FeedbackType::MU;
        if (n * s.n_ss_per_sta > s.n_tx)
            continue;
        const auto o = sounding_overhead(s, cfg.phy);
        t.add_row({std::to_string(n), std::string(to_string(s.feedback_type)), std::to_string(s.codebook_info),
                   std::to_string(s.n_ss_per_sta), std::to_string(feedback_report_bits(s)), fmt(o.ndpa_us),
                   fmt(o.ndp_us), fmt(o.bfrp_us), fmt(o.feedback_us), fmt(o.sifs_total_us), fmt(o.total_overhead_us),
                   fmt(o.overhead_ratio)});
    }
    return t;
}

CapacityTables capacity_tables(const RunConfig &cfg)
{
    CapacityTables out;
    out.summary.header = {"n_sta", "codebook", "feedback_type", "overhead_ratio", "mean_capacity_bps",
                          "effective_capacity_bps"};
    out.trace.header = trace_csv_header();
    for (int cb : {0, 1})
        for (int n : {1, 2, 4, 8})
        {
            SoundingConfig s = cfg.sounding;
            s.codebook_info = cb;
            if (n * s.n_ss_per_sta > s.n_tx)
                continue;
            const auto trace = idealized_overhead_mode(s, cfg.phy, cfg.link, n, cfg.idealized);
            const double mean_capacity = effective_capacity(trace.capacity_bps, 0.0);
            out.summary.add_row({std::to_string(n), std::to_string(cb), n == 1 ? "SU" : "MU",
                                 fmt(trace.overhead_ratio), fmt(mean_capacity), fmt(trace.effective_capacity_bps)});
            append_trace_rows(out.trace, "ideal-n" + std::to_string(n) + "-cb" + std::to_string(cb), trace);
        }
    return out;
}

CsvTable separation_table(const std::vector<SeparationPoint> &curve)
{
    CsvTable t;
    t.header = {"separation_deg", "su_capacity_bps", "su_se_bps", "mu_capacity_bps", "mu_se_bps", "mu_su_ratio",
                "su_dominant"};
    for (const auto &p : curve)
        t.add_row({fmt(p.separation_deg), fmt(p.su_mean_bps), fmt(p.su_se_bps), fmt(p.mu_mean_bps), fmt(p.mu_se_bps),
                   fmt(p.ratio()), p.su_dominant() ? "1" : "0"});
    return t;
}

CsvTable distance_table(const std::vector<DistancePoint> &curve)
{
    CsvTable t;
    t.header = {"distance_m", "mu_dominant_fraction", "mean_mu_su_ratio", "n_separations"};
    for (const auto &p : curve)
        t.add_row({fmt(p.distance_m), fmt(p.mu_dominant_fraction), fmt(p.mean_ratio),
                   std::to_string(p.separations.size())});
    return t;
}

CsvTable guideline_csv(const GuidelineTable &table)
{
    CsvTable t;
    t.header = {"scenario", "sta_dims", "codebook", "verdict", "mu_eff_capacity_bps", "su_eff_capacity_bps",
                "margin_bps"};
    for (const auto &c : table.cells)
        t.add_row({to_string(c.row), dims_label(c.sta_dims), std::to_string(c.codebook), c.on ? "ON" : "OFF",
                   fmt(c.mu_eff_bps), fmt(c.su_eff_bps), fmt(c.margin_bps)});
    return t;
}

std::string guideline_json(const GuidelineTable &table, const RunConfig &cfg)
{
    nlohmann::ordered_json j;
    j["seed"] = cfg.seed;
    j["n_cycles"] = cfg.guideline.n_cycles;
    j["n_sta"] = 4;
    j["on_count"] = table.on_count();
    auto &cells = j["cells"] = nlohmann::ordered_json::array();
    for (const auto &c : table.cells)
        cells.push_back({{"scenario", to_string(c.row)},
                         {"sta_dims", dims_label(c.sta_dims)},
                         {"codebook", c.codebook},
                         {"verdict", c.on ? "ON" : "OFF"},
                         {"mu_eff_capacity_bps", c.mu_eff_bps},
                         {"su_eff_capacity_bps", c.su_eff_bps},
                         {"margin_bps", c.margin_bps},
                         {"mu_capacity_bps", c.mu_raw_bps},
                         {"su_capacity_bps", c.su_raw_bps},
                         {"mu_overhead_ratio", c.mu_overhead_ratio},
                         {"su_overhead_ratio", c.su_overhead_ratio},
                         {"su_sta", c.su_sta}});
    return j.dump(2) + "\n";
}

void run_overhead(const RunConfig &cfg, std::ostream &log)
{
    const auto t = overhead_table(cfg);
    t.write(output_path(cfg, "overhead.csv").string());
    log << t.str();
}

void run_capacity(const RunConfig &cfg, std::ostream &log)
{
    const auto t = capacity_tables(cfg);
    t.summary.write(output_path(cfg, "capacity.csv").string());
    t.trace.write(output_path(cfg, "capacity_trace.csv").string());
    log << t.summary.str();
}

void run_sweep(const RunConfig &cfg, const std::string &kind, std::ostream &log)
{
    const auto ctx = sim_context(cfg);
    if (kind == "separation")
    {
        const auto curve = sweep_separation(cfg.sweep, ctx);
        separation_table(curve).write(output_path(cfg, "separation_sweep.csv").string());
        const auto st = dominance_stats(curve);
        log << "separation sweep: " << st.n_su_dominant << "/" << st.n_points << " SU-dominant ("
            << fmt(100 * st.su_dominant_fraction) << "%), " << st.n_su_dominant_edges
            << " within 12 deg of the ends, min MU/SU at " << fmt(st.argmin_ratio_deg) << " deg\n";
    }
    else if (kind == "distance")
    {
        const auto curve = sweep_distance(cfg.sweep, ctx);
        distance_table(curve).write(output_path(cfg, "distance_sweep.csv").string());
        for (const auto &p : curve)
            log << "distance " << fmt(p.distance_m) << " m: MU dominant in " << fmt(100 * p.mu_dominant_fraction)
                << "% of separations\n";
    }
    else
        throw std::invalid_argument("sweep: --kind must be separation or distance, got '" + kind + "'");
}

void run_guideline(const RunConfig &cfg, std::ostream &log)
{
    const auto table = guideline_table(cfg.guideline, cfg.sounding, cfg.phy, sim_context(cfg));
    const auto csv = guideline_csv(table);
    csv.write(output_path(cfg, "guideline.csv").string());
    write_text(output_path(cfg, "guideline.json"), guideline_json(table, cfg));
    log << csv.str() << "ON cells: " << table.on_count() << "/" << table.cells.size() << "\n";
}

} // namespace axmu
