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

#include "axmu/airtime.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace axmu
{

namespace
{

// HE-MCS 0..11: coded bits per subcarrier and coding rate.
struct McsEntry
{
    int bits_per_subcarrier;
    int rate_num;
    int rate_den;
};

constexpr std::array<McsEntry, 12> kHeMcs{{
    {1, 1, 2}, {2, 1, 2}, {2, 3, 4}, {4, 1, 2}, {4, 3, 4}, {6, 2, 3},
    {6, 3, 4}, {6, 5, 6}, {8, 3, 4}, {8, 5, 6}, {10, 3, 4}, {10, 5, 6},
}};

constexpr int kServiceBits = 16;
constexpr int kTailBits = 6;

void require(bool ok, const std::string &what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

} // namespace

std::string_view to_string(FeedbackType type)
{
    return type == FeedbackType::SU ? "SU" : "MU";
}

void PhyTiming::validate() const
{
    require(sifs_us > 0 && legacy_preamble_us > 0 && legacy_symbol_us > 0 && he_preamble_base_us > 0 &&
                he_ltf_symbol_us > 0 && ofdm_symbol_us > 0 && control_rate_mbps > 0,
            "PhyTiming: all durations and rates must be strictly positive");
    require(he_ltf_symbol_us <= ofdm_symbol_us, "PhyTiming: he_ltf_symbol_us must not exceed ofdm_symbol_us");
}

void SoundingConfig::validate() const
{
    require(n_tx >= 1 && n_rx >= 1 && n_sta >= 1 && n_ss_per_sta >= 1, "SoundingConfig: dimensions must be >= 1");
    require(n_ss_per_sta <= n_rx, "SoundingConfig: n_ss_per_sta exceeds n_rx");
    require(n_sta * n_ss_per_sta <= n_tx, "SoundingConfig: total streams exceed n_tx");
    require(n_sta * n_ss_per_sta <= kMaxSoundedStreams, "SoundingConfig: more than 8 sounded streams");
    require(feedback_type == FeedbackType::MU || n_sta == 1, "SoundingConfig: SU feedback requires n_sta = 1");
    require(codebook_info == 0 || codebook_info == 1, "SoundingConfig: codebook_info must be 0 or 1");
    require(n_subcarriers >= 0, "SoundingConfig: n_subcarriers must be >= 0");
    require(grouping >= 1, "SoundingConfig: grouping must be >= 1");
    require(ul_feedback_mcs >= 0 && ul_feedback_mcs < static_cast<int>(kHeMcs.size()),
            "SoundingConfig: ul_feedback_mcs must be in [0, 11]");
    require(txop_us > 0 && txop_us <= kMaxTxopUs, "SoundingConfig: txop_us must be in (0, 5400]");
    require(ndpa_base_bytes >= 0 && ndpa_per_sta_bytes >= 0 && bfrp_base_bytes >= 0 && bfrp_per_sta_bytes >= 0 &&
                feedback_header_bytes >= 0 && snr_bits >= 0 && delta_snr_bits >= 0,
            "SoundingConfig: frame sizes must be non-negative");
}

AngleCount givens_angle_count(int n_rows, int n_cols)
{
    if (n_rows < 1 || n_cols < 1)
        throw std::invalid_argument("givens_angle_count: zero dimension");
    if (n_cols > n_rows)
        throw std::invalid_argument("givens_angle_count: n_cols exceeds n_rows");
    const int c = std::min(n_cols, n_rows - 1);
    const int n = c * (2 * n_rows - c - 1) / 2;
    return {n, n};
}

AngleBits angle_bit_widths(FeedbackType type, int codebook_info)
{
    if (type == FeedbackType::SU)
        return codebook_info == 0 ? AngleBits{4, 2} : AngleBits{6, 4};
    return codebook_info == 0 ? AngleBits{7, 5} : AngleBits{9, 7};
}

std::int64_t feedback_report_bits(const SoundingConfig &cfg)
{
    const auto [n_phi, n_psi] = givens_angle_count(cfg.n_tx, cfg.n_ss_per_sta);
    const auto [b_phi, b_psi] = angle_bit_widths(cfg.feedback_type, cfg.codebook_info);

    const std::int64_t fed_back = (cfg.n_subcarriers + cfg.grouping - 1) / cfg.grouping;
    std::int64_t bits = fed_back * (n_phi * b_phi + n_psi * b_psi);
    bits += static_cast<std::int64_t>(cfg.n_ss_per_sta) * cfg.snr_bits;
    if (cfg.feedback_type == FeedbackType::MU)
        bits += static_cast<std::int64_t>(cfg.n_subcarriers) * cfg.n_ss_per_sta * cfg.delta_snr_bits;
    return bits;
}

int feedback_ru_tones(int n_sta)
{
    if (n_sta < 1 || n_sta > 8)
        throw std::invalid_argument("feedback_ru_tones: n_sta must be in [1, 8]");
    // 242-, 106-, 52- and 26-tone RUs.
    if (n_sta == 1)
        return 234;
    if (n_sta == 2)
        return 102;
    if (n_sta <= 4)
        return 48;
    return 24;
}

std::int64_t data_bits_per_symbol(int tones, int mcs)
{
    if (mcs < 0 || mcs >= static_cast<int>(kHeMcs.size()))
        throw std::invalid_argument("data_bits_per_symbol: unknown MCS " + std::to_string(mcs));
    const auto &e = kHeMcs[static_cast<std::size_t>(mcs)];
    return static_cast<std::int64_t>(tones) * e.bits_per_subcarrier * e.rate_num / e.rate_den;
}

double non_ht_duration_us(int bytes, const PhyTiming &phy)
{
    const double bits_per_symbol = phy.control_rate_mbps * phy.legacy_symbol_us;
    const double payload_bits = kServiceBits + 8.0 * bytes + kTailBits;
    return phy.legacy_preamble_us + std::ceil(payload_bits / bits_per_symbol) * phy.legacy_symbol_us;
}

double overhead_ratio(double total_overhead_us, double txop_us)
{
    if (total_overhead_us < 0 || txop_us <= 0)
        throw std::invalid_argument("overhead_ratio: negative overhead or non-positive TXOP");
    return total_overhead_us / (total_overhead_us + txop_us);
}

OverheadBreakdown sounding_overhead(const SoundingConfig &cfg, const PhyTiming &phy)
{
    cfg.validate();
    phy.validate();

    const bool mu = cfg.feedback_type == FeedbackType::MU;
    const int sounded_streams = cfg.n_sta * cfg.n_ss_per_sta;

    OverheadBreakdown out;
    out.ndpa_us = non_ht_duration_us(cfg.ndpa_base_bytes + cfg.ndpa_per_sta_bytes * cfg.n_sta, phy);
    out.ndp_us = phy.legacy_preamble_us + phy.he_preamble_base_us + sounded_streams * phy.he_ltf_symbol_us;
    out.bfrp_us = mu ? non_ht_duration_us(cfg.bfrp_base_bytes + cfg.bfrp_per_sta_bytes * cfg.n_sta, phy) : 0.0;

    // All STAs report concurrently on equal RUs and carry equally sized
    // reports, so the slowest STA is any one of them.
    const std::int64_t payload = feedback_report_bits(cfg) + 8LL * cfg.feedback_header_bytes;
    const std::int64_t per_symbol = data_bits_per_symbol(feedback_ru_tones(cfg.n_sta), cfg.ul_feedback_mcs);
    const std::int64_t n_symbols = (payload + per_symbol - 1) / per_symbol;
    out.feedback_us = phy.legacy_preamble_us + phy.he_preamble_base_us + phy.he_ltf_symbol_us +
                      static_cast<double>(n_symbols) * phy.ofdm_symbol_us;

    out.sifs_total_us = (mu ? 3 : 2) * phy.sifs_us;
    out.total_overhead_us = out.ndpa_us + out.ndp_us + out.bfrp_us + out.feedback_us + out.sifs_total_us;
    out.overhead_ratio = overhead_ratio(out.total_overhead_us, cfg.txop_us);
    return out;
}

} // namespace axmu
