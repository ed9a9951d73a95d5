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

#ifndef AXMU_COMMANDS_HPP
#define AXMU_COMMANDS_HPP

#include "axmu/config.hpp"
#include "axmu/csv.hpp"
#include "axmu/scenarios.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace axmu
{

SimContext sim_context(const RunConfig &cfg);

// Sounding airtime for n_sta = 1, 2, 4, 8 (SU feedback for one STA).
CsvTable overhead_table(const RunConfig &cfg);

struct CapacityTables
{
    CsvTable summary;
    CsvTable trace;
};

// Idealized interference-free capacity for n_sta = 1, 2, 4, 8 and both codebooks.
CapacityTables capacity_tables(const RunConfig &cfg);

CsvTable separation_table(const std::vector<SeparationPoint> &curve);
CsvTable distance_table(const std::vector<DistancePoint> &curve);
CsvTable guideline_csv(const GuidelineTable &table);
std::string guideline_json(const GuidelineTable &table, const RunConfig &cfg);

// Subcommands: write their files into cfg.out_dir and a summary to `log`.
void run_overhead(const RunConfig &cfg, std::ostream &log);
void run_capacity(const RunConfig &cfg, std::ostream &log);
void run_sweep(const RunConfig &cfg, const std::string &kind, std::ostream &log);
void run_guideline(const RunConfig &cfg, std::ostream &log);

} // namespace axmu

#endif
