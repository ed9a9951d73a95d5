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

#include "axmu/config.hpp"

#include "axmu/csv.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace axmu
{

namespace
{

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

[[noreturn]] void bad_value(std::string_view key, std::string_view text, std::string_view expected)
{
    throw std::invalid_argument("config: invalid value " + quoted(text) + " for key " + quoted(key) + " (expected " +
                                std::string(expected) + ")");
}

template <class T>
T parse_number(std::string_view key, std::string_view text, std::string_view expected)
{
    T v{};
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end)
        bad_value(key, text, expected);
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

void parse_into(int &dst, std::string_view key, std::string_view text) { dst = parse_number<int>(key, text, "integer"); }
void parse_into(unsigned &dst, std::string_view key, std::string_view text)
{
    dst = parse_number<unsigned>(key, text, "non-negative integer");
}
void parse_into(std::uint64_t &dst, std::string_view key, std::string_view text)
{
    dst = parse_number<std::uint64_t>(key, text, "non-negative integer");
}
void parse_into(double &dst, std::string_view key, std::string_view text)
{
    dst = parse_number<double>(key, text, "number");
}
void parse_into(bool &dst, std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1")
        dst = true;
    else if (text == "false" || text == "0")
        dst = false;
    else
        bad_value(key, text, "true or false");
}
void parse_into(std::string &dst, std::string_view, std::string_view text) { dst = std::string(text); }
void parse_into(FeedbackType &dst, std::string_view key, std::string_view text)
{
    if (text == "SU")
        dst = FeedbackType::SU;
    else if (text == "MU")
        dst = FeedbackType::MU;
    else
        bad_value(key, text, "SU or MU");
}
void parse_into(std::vector<double> &dst, std::string_view key, std::string_view text)
{
    std::vector<double> out;
    while (true)
    {
        const auto comma = text.find(',');
        out.push_back(parse_number<double>(key, trim(text.substr(0, comma)), "comma-separated numbers"));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    dst = std::move(out);
}

std::string show(int v) { return std::to_string(v); }
std::string show(unsigned v) { return std::to_string(v); }
std::string show(std::uint64_t v) { return std::to_string(v); }
std::string show(double v) { return format_double(v); }
std::string show(bool v) { return v ? "true" : "false"; }
std::string show(const std::string &v) { return v; }
std::string show(FeedbackType v) { return std::string(to_string(v)); }
std::string show(const std::vector<double> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + format_double(v[i]);
    return s;
}

struct Entry
{
    std::string name;
    std::string help;
    std::function<std::string(RunConfig &)> get;
    std::function<void(RunConfig &, std::string_view)> set;
};

template <class Access>
Entry entry(std::string name, std::string help, Access access)
{
    Entry e{name, std::move(help), {}, {}};
    e.get = [access](RunConfig &c) { return show(access(c)); };
    e.set = [access, name](RunConfig &c, std::string_view text) { parse_into(access(c), name, trim(text)); };
    return e;
}

#define AXMU_KEY(name, member, help) entry(name, help, [](RunConfig &c) -> auto & { return c.member; })

const std::vector<Entry> &registry()
{
    static const std::vector<Entry> keys = {
        AXMU_KEY("phy.sifs_us", phy.sifs_us, "short interframe space"),
        AXMU_KEY("phy.legacy_preamble_us", phy.legacy_preamble_us, "non-HT preamble duration"),
        AXMU_KEY("phy.legacy_symbol_us", phy.legacy_symbol_us, "non-HT OFDM symbol duration"),
        AXMU_KEY("phy.he_preamble_base_us", phy.he_preamble_base_us, "HE preamble without HE-LTFs"),
        AXMU_KEY("phy.he_ltf_symbol_us", phy.he_ltf_symbol_us, "duration of one HE-LTF"),
        AXMU_KEY("phy.ofdm_symbol_us", phy.ofdm_symbol_us, "HE data symbol including guard interval"),
        AXMU_KEY("phy.control_rate_mbps", phy.control_rate_mbps, "rate of NDPA and BFRP frames"),

        AXMU_KEY("sounding.n_tx", sounding.n_tx, "AP antennas (also used by the channel model)"),
        AXMU_KEY("sounding.n_rx", sounding.n_rx, "antennas per STA"),
        AXMU_KEY("sounding.n_sta", sounding.n_sta, "STAs in the sounding exchange"),
        AXMU_KEY("sounding.n_ss_per_sta", sounding.n_ss_per_sta, "fed-back columns per STA"),
        AXMU_KEY("sounding.n_subcarriers", sounding.n_subcarriers, "sounded subcarriers"),
        AXMU_KEY("sounding.grouping", sounding.grouping, "subcarrier grouping Ng"),
        AXMU_KEY("sounding.codebook_info", sounding.codebook_info, "codebook size selector, 0 or 1"),
        AXMU_KEY("sounding.feedback_type", sounding.feedback_type, "SU or MU"),
        AXMU_KEY("sounding.ul_feedback_mcs", sounding.ul_feedback_mcs, "HE-MCS of the feedback PPDU"),
        AXMU_KEY("sounding.txop_us", sounding.txop_us, "data duration per sounding cycle, at most 5400"),
        AXMU_KEY("sounding.ndpa_base_bytes", sounding.ndpa_base_bytes, "NDPA size without STA info fields"),
        AXMU_KEY("sounding.ndpa_per_sta_bytes", sounding.ndpa_per_sta_bytes, "NDPA STA info field size"),
        AXMU_KEY("sounding.bfrp_base_bytes", sounding.bfrp_base_bytes, "BFRP trigger size without user info"),
        AXMU_KEY("sounding.bfrp_per_sta_bytes", sounding.bfrp_per_sta_bytes, "BFRP user info field size"),
        AXMU_KEY("sounding.feedback_header_bytes", sounding.feedback_header_bytes, "MAC framing of a feedback frame"),
        AXMU_KEY("sounding.snr_bits", sounding.snr_bits, "average SNR field per stream"),
        AXMU_KEY("sounding.delta_snr_bits", sounding.delta_snr_bits, "MU per-tone delta SNR field"),

        AXMU_KEY("link.tx_power_dbm", link.tx_power_dbm, "total AP transmit power"),
        AXMU_KEY("link.noise_psd_dbm_hz", link.noise_psd_dbm_hz, "thermal noise density"),
        AXMU_KEY("link.bandwidth_hz", link.bandwidth_hz, "channel bandwidth"),
        AXMU_KEY("link.noise_figure_db", link.noise_figure_db, "receiver noise figure"),

        AXMU_KEY("channel.k_factor_db", channel.k_factor_db, "LoS power over scattered power"),
        AXMU_KEY("channel.breakpoint_m", channel.breakpoint_m, "path-loss breakpoint distance"),
        AXMU_KEY("channel.pathloss_intercept_db", channel.pathloss_intercept_db, "path loss at 1 m"),
        AXMU_KEY("channel.taps_per_cluster", channel.taps_per_cluster, "delay taps per cluster"),
        AXMU_KEY("channel.tap_spacing_ns", channel.tap_spacing_ns, "delay between taps"),
        AXMU_KEY("channel.tap_decay_db", channel.tap_decay_db, "power decay per tap"),
        AXMU_KEY("channel.angular_spread_deg", channel.angular_spread_deg, "Laplacian PAS spread at AP and STA"),
        AXMU_KEY("channel.subcarrier_spacing_hz", channel.subcarrier_spacing_hz, "OFDM tone spacing"),
        AXMU_KEY("channel.subcarrier_stride", channel.subcarrier_stride, "evaluate every n-th tone"),

        AXMU_KEY("capacity.reference_snr_db", idealized.reference_snr_db, "single-STA SNR of the idealized mode"),
        AXMU_KEY("capacity.n_cycles", idealized.n_cycles, "cycles per idealized point"),
        AXMU_KEY("capacity.fading", idealized.fading, "unit-mean exponential power per cycle"),

        AXMU_KEY("scenario.n_cycles", sweep.n_cycles, "cycles per sweep point"),
        AXMU_KEY("scenario.sta_dims", sweep.sta_dims, "antennas and streams per STA in sweeps"),
        AXMU_KEY("scenario.codebook", sweep.codebook, "codebook used by sweeps"),
        AXMU_KEY("scenario.los_distance_m", sweep.los_distance_m, "distance of the LoS separation sweep"),
        AXMU_KEY("scenario.separation_step_deg", sweep.separation_step_deg, "grid step of the separation sweep"),
        AXMU_KEY("scenario.distances_m", sweep.distances_m, "distances of the NLoS sweep"),
        AXMU_KEY("scenario.n_separations", sweep.n_separations, "separations per distance, spread over [0, 180)"),

        AXMU_KEY("guideline.n_cycles", guideline.n_cycles, "cycles per guideline cell"),
        AXMU_KEY("guideline.los_distance_m", guideline.los_distance_m, "distance of the LoS rows"),
        AXMU_KEY("guideline.small_distance_m", guideline.small_distance_m, "small NLoS distance"),
        AXMU_KEY("guideline.large_distance_m", guideline.large_distance_m, "large NLoS distance"),
        AXMU_KEY("guideline.near_aods_deg", guideline.near_aods_deg, "AoDs of the closely spaced LoS row"),
        AXMU_KEY("guideline.far_aods_deg", guideline.far_aods_deg, "AoDs of the well separated LoS row"),
        AXMU_KEY("guideline.nlos_aods_deg", guideline.nlos_aods_deg, "AoDs of the NLoS rows"),

        AXMU_KEY("run.seed", seed, "master seed for all randomness"),
        AXMU_KEY("run.workers", workers, "worker threads"),
        AXMU_KEY("run.out", out_dir, "output directory"),
    };
    return keys;
}

#undef AXMU_KEY

} // namespace

void RunConfig::finalize()
{
    channel.n_tx = sounding.n_tx;
    sweep.master_seed = seed;
    guideline.master_seed = seed;
    idealized.seed = seed;
    if (workers < 1)
        throw std::invalid_argument("config: run.workers must be >= 1");
    phy.validate();
    sounding.validate();
    link.validate();
    channel.validate();
    if (idealized.n_cycles < 1 || sweep.n_cycles < 1 || guideline.n_cycles < 1)
        throw std::invalid_argument("config: cycle counts must be >= 1");
    if (sweep.sta_dims < 1 || sweep.sta_dims > 2 || (sweep.codebook != 0 && sweep.codebook != 1))
        throw std::invalid_argument("config: scenario.sta_dims must be 1 or 2 and scenario.codebook 0 or 1");
}

std::vector<ConfigKeyInfo> config_keys()
{
    RunConfig defaults;
    std::vector<ConfigKeyInfo> out;
    for (const auto &e : registry())
        out.push_back({e.name, e.get(defaults), e.help});
    return out;
}

void set_config_value(RunConfig &cfg, std::string_view key, std::string_view value)
{
    for (const auto &e : registry())
        if (e.name == key)
        {
            e.set(cfg, value);
            return;
        }
    throw std::invalid_argument("config: unknown key " + quoted(key));
}

RunConfig parse_config(std::string_view text, RunConfig base)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream is{std::string(text)};
    try
    {
        pt::ini_parser::read_ini(is, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw std::invalid_argument("config: line " + std::to_string(e.line()) + ": " + e.message());
    }

    for (const auto &[section, body] : tree)
    {
        if (!body.data().empty())
            throw std::invalid_argument("config: key " + quoted(section) + " must appear inside a [section]");
        const bool known = std::any_of(registry().begin(), registry().end(),
                                       [&](const Entry &e) { return e.name.starts_with(section + "."); });
        if (!known)
            throw std::invalid_argument("config: unknown section " + quoted(section));
        for (const auto &[key, value] : body)
            set_config_value(base, section + "." + key, value.data());
    }
    return base;
}

RunConfig load_config(const std::string &path, RunConfig base)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::string config_help()
{
    std::string out = "Config keys ([section] key = value):\n";
    for (const auto &k : config_keys())
    {
        std::string line = "  " + k.name;
        line.resize(std::max<std::size_t>(line.size() + 1, 36), ' ');
        out += line + k.help + " (default: " + k.default_value + ")\n";
    }
    return out;
}

} // namespace axmu
