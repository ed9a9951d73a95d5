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

#ifndef AXMU_AIRTIME_HPP
#define AXMU_AIRTIME_HPP

#include <cstdint>
#include <string_view>

namespace axmu
{

enum class FeedbackType
{
    SU,
    MU
};

std::string_view to_string(FeedbackType type);

// PHY timing knobs for the sounding exchange. Defaults are nominal 802.11ax
// values for a 20 MHz channel with 2x HE-LTF and 0.8 us guard interval.
struct PhyTiming
{
    double sifs_us = 16.0;
    double legacy_preamble_us = 20.0;  // L-STF + L-LTF + L-SIG
    double legacy_symbol_us = 4.0;     // non-HT OFDM symbol
    double he_preamble_base_us = 16.0; // RL-SIG + HE-SIG-A + HE-STF
    double he_ltf_symbol_us = 8.0;
    double ofdm_symbol_us = 13.6;      // 12.8 us HE symbol + 0.8 us GI
    double control_rate_mbps = 24.0;   // NDPA and BFRP are sent non-HT

    void validate() const;
};

struct SoundingConfig
{
    int n_tx = 8;
    int n_rx = 1;
    int n_sta = 1;
    int n_ss_per_sta = 1;
    int n_subcarriers = 242;
    int grouping = 1;
    int codebook_info = 0;
    FeedbackType feedback_type = FeedbackType::SU;
    int ul_feedback_mcs = 0;
    double txop_us = 5400.0;

    // Frame layout constants (bytes / bits).
    int ndpa_base_bytes = 21;
    int ndpa_per_sta_bytes = 4;
    int bfrp_base_bytes = 28;
    int bfrp_per_sta_bytes = 5;
    int feedback_header_bytes = 34;
    int snr_bits = 8;       // average SNR per stream
    int delta_snr_bits = 4; // MU exclusive report, per tone per stream

    void validate() const;
};

struct OverheadBreakdown
{
    double ndpa_us = 0.0;
    double ndp_us = 0.0;
    double bfrp_us = 0.0;
    double feedback_us = 0.0;
    double sifs_total_us = 0.0;
    double total_overhead_us = 0.0;
    double overhead_ratio = 0.0;
};

struct AngleCount
{
    int n_phi;
    int n_psi;
};

struct AngleBits
{
    int b_phi;
    int b_psi;
};

inline constexpr int kMaxSoundedStreams = 8;
inline constexpr double kMaxTxopUs = 5400.0;

/// Number of phi/psi Givens angles describing an n_rows x n_cols V-matrix.
AngleCount givens_angle_count(int n_rows, int n_cols);

AngleBits angle_bit_widths(FeedbackType type, int codebook_info);

/// Size of one STA's compressed beamforming report (plus the MU exclusive
/// report for MU feedback), excluding MAC framing.
std::int64_t feedback_report_bits(const SoundingConfig &cfg);

// Data subcarriers of the resource unit each STA gets for its feedback when
// n_sta STAs answer the BFRP trigger concurrently in a 20 MHz channel.
int feedback_ru_tones(int n_sta);

// Data bits per OFDM symbol for one spatial stream on `tones` subcarriers.
std::int64_t data_bits_per_symbol(int tones, int mcs);

double non_ht_duration_us(int bytes, const PhyTiming &phy);

double overhead_ratio(double total_overhead_us, double txop_us);

OverheadBreakdown sounding_overhead(const SoundingConfig &cfg, const PhyTiming &phy);

} // namespace axmu

#endif
