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

#ifndef AXMU_CHANNEL_HPP
#define AXMU_CHANNEL_HPP

#include "axmu/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace axmu
{

enum class Regime
{
    LoS,
    NLoS
};

std::string_view to_string(Regime regime);

struct StaGeometry
{
    double distance_m = 8.0;
    double los_aod_deg = 0.0;
    int n_rx = 1;
    std::uint32_t id = 0; // keys the STA's random substream

    void validate() const;
};

// Scatterer clusters and their tapped delay line. Every STA is served by the
// cluster in its own vicinity: STA k draws its NLoS taps from cluster
// cluster_of_sta[k], whose mean AoD equals that STA's LoS AoD.
struct ClusterParam
{
    std::vector<double> tap_delays_ns;
    std::vector<double> tap_powers_db;
    std::vector<std::size_t> cluster_of_tap;
    std::vector<double> mean_aod_deg; // per cluster
    std::vector<double> mean_aoa_deg; // per cluster
    double angular_spread_deg = 30.0;
    std::vector<std::size_t> cluster_of_sta;

    std::size_t n_clusters() const { return mean_aod_deg.size(); }
};

struct ChannelConfig
{
    int n_tx = 8;
    double k_factor_db = 10.0; // LoS power over total scattered power
    double breakpoint_m = 10.0;
    double pathloss_intercept_db = 84.0;
    int taps_per_cluster = 9;
    double tap_spacing_ns = 10.0;
    double tap_decay_db = 3.0;
    double angular_spread_deg = 30.0;
    double subcarrier_spacing_hz = 78125.0;
    int subcarrier_stride = 8; // evaluate every n-th tone of the 242-tone RU

    void validate() const;
};

// Per-STA, per-subcarrier small-scale channel. Path loss is carried
// alongside and applied by the capacity code.
struct ChannelRealization
{
    std::vector<std::vector<CMatrix>> h; // [sta][tone], n_rx x n_tx
    std::vector<double> tone_freqs_hz;
    std::vector<double> pathloss_db;
    Regime regime = Regime::NLoS;
    std::uint64_t rng_seed = 0;

    std::size_t n_sta() const { return h.size(); }
    std::size_t n_tones() const { return tone_freqs_hz.size(); }
};

double pathloss_db(double distance_m, double breakpoint_m, double intercept_db);

CVector ula_steering(int n_ant, double angle_deg);

/// Spatial correlation of a half-wavelength ULA under a Laplacian power
/// azimuth spectrum centred on mean_angle_deg and truncated to +-180 deg:
/// R[p,q] = E[exp(i*pi*(p-q)*sin(theta))].
CMatrix correlation_matrix(int n_ant, double mean_angle_deg, double angular_spread_deg);

// Hermitian PSD square root with eigenvalues clamped at zero.
CMatrix psd_sqrt(const CMatrix &r);

// Frequency offsets of the evaluated subcarriers of the 20 MHz 242-tone RU.
std::vector<double> subcarrier_frequencies(const ChannelConfig &cfg);

/// One cluster per STA, each anchored at that STA's LoS AoD. Receive-side
/// mean angles are drawn uniformly in [0, 180) from `aoa_seed`.
ClusterParam coupled_clusters(std::span<const StaGeometry> geometries, const ChannelConfig &cfg,
                              std::uint64_t aoa_seed);

// Precomputes correlation square roots and steering vectors for one scenario;
// draw() is then cheap and const, so a single model can serve many cycles
// from any thread.
class ChannelModel
{
  public:
    ChannelModel(std::vector<StaGeometry> geometries, ClusterParam clusters, Regime regime,
                 const ChannelConfig &cfg);

    ChannelRealization draw(std::uint64_t seed) const;

    const std::vector<StaGeometry> &geometries() const { return geometries_; }

  private:
    struct StaPlan
    {
        std::vector<std::size_t> taps;
        CMatrix rx_sqrt;
        CMatrix tx_sqrt;
        CMatrix los; // a_rx * a_tx^H
    };

    std::vector<StaGeometry> geometries_;
    ClusterParam clusters_;
    Regime regime_;
    ChannelConfig cfg_;
    std::vector<double> freqs_;
    std::vector<double> tap_amplitude_;
    std::vector<StaPlan> plans_;
};

ChannelRealization draw_realization(std::span<const StaGeometry> geometries, const ClusterParam &clusters,
                                    Regime regime, std::uint64_t seed, const ChannelConfig &cfg);

// CSV tensor dump: sta,subcarrier,rx,tx,re,im
void write_realization_csv(std::ostream &os, const ChannelRealization &real);

} // namespace axmu

#endif
