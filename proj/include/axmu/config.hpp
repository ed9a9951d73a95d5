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

#ifndef AXMU_CONFIG_HPP
#define AXMU_CONFIG_HPP

#include "axmu/airtime.hpp"
#include "axmu/capacity.hpp"
#include "axmu/channel.hpp"
#include "axmu/scenarios.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace axmu
{

struct RunConfig
{
    PhyTiming phy;
    SoundingConfig sounding;
    LinkBudget link;
    ChannelConfig channel;
    IdealizedSetup idealized;
    SweepSetup sweep;
    GuidelineSetup guideline;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string out_dir = ".";

    // Copies the shared values (seed, antenna count) into the per-module
    // structs and validates everything.
    void finalize();
};

struct ConfigKeyInfo
{
    std::string name; // section.key
    std::string default_value;
    std::string help;
};

// Every accepted key, in documentation order, with its built-in default.
std::vector<ConfigKeyInfo> config_keys();

// INI text with [section] headers and key = value lines; `#` and `;` start
// comments. Unknown sections or keys are errors naming the key.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string &path, RunConfig base = {});

// Sets one key from its textual value, as if read from a file.
void set_config_value(RunConfig &cfg, std::string_view key, std::string_view value);

std::string config_help();

} // namespace axmu

#endif
