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

#include "axmu/channel.hpp"

#include "axmu/csv.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace axmu
{

namespace
{

constexpr int kRuTones = 242;

// E[exp(i*pi*d*sin(theta))] for a Laplacian PAS truncated to +-pi around
// `mean`, via the Jacobi-Anger expansion
//   exp(i x sin t) = sum_m J_m(x) exp(i m t)
// and the closed-form characteristic function of the truncated Laplacian.
cdouble laplacian_lag(int lag, double mean, double spread)
{
    const double a = std::sqrt(2.0) / spread;
    const double tail = std::exp(-a * kPi);
    const double norm = a / -std::expm1(-a * kPi);
    const double x = kPi * lag;
    const int terms = static_cast<int>(std::ceil(x)) + 40;

    cdouble acc = std::cyl_bessel_j(0.0, x);
    for (int m = 1; m <= terms; ++m)
    {
        const double sign = m % 2 ? -1.0 : 1.0;
        const double cm = norm * (1.0 - sign * tail) * a / (a * a + double(m) * m);
        const double jm = std::cyl_bessel_j(double(m), x);
        // e^{im mu} + (-1)^m e^{-im mu}
        const cdouble pair = m % 2 ? cdouble(0.0, 2.0 * std::sin(m * mean)) : cdouble(2.0 * std::cos(m * mean), 0.0);
        acc += jm * cm * pair;
    }
    return acc;
}

} // namespace

std::string_view to_string(Regime regime)
{
    return regime == Regime::LoS ? "LoS" : "NLoS";
}

void StaGeometry::validate() const
{
    if (!(distance_m > 0))
        throw std::invalid_argument("StaGeometry: distance_m must be positive");
    if (!(los_aod_deg >= 0 && los_aod_deg <= 180))
        throw std::invalid_argument("StaGeometry: los_aod_deg must be in [0, 180]");
    if (n_rx < 1)
        throw std::invalid_argument("StaGeometry: n_rx must be >= 1");
}

void ChannelConfig::validate() const
{
    if (n_tx < 1 || taps_per_cluster < 1 || subcarrier_stride < 1)
        throw std::invalid_argument("ChannelConfig: n_tx, taps_per_cluster and subcarrier_stride must be >= 1");
    if (!(breakpoint_m > 0) || !(angular_spread_deg > 0) || !(subcarrier_spacing_hz > 0) || tap_spacing_ns < 0)
        throw std::invalid_argument("ChannelConfig: breakpoint, spread and spacings must be positive");
    if (!std::isfinite(k_factor_db) || !std::isfinite(pathloss_intercept_db) || !std::isfinite(tap_decay_db))
        throw std::invalid_argument("ChannelConfig: non-finite parameter");
}

double pathloss_db(double distance_m, double breakpoint_m, double intercept_db)
{
    if (!(distance_m > 0) || !(breakpoint_m > 0))
        throw std::invalid_argument("pathloss_db: distance and breakpoint must be positive");
    double loss = intercept_db + 20.0 * std::log10(std::min(distance_m, breakpoint_m));
    if (distance_m > breakpoint_m)
        loss += 35.0 * std::log10(distance_m / breakpoint_m);
    return loss;
}

CVector ula_steering(int n_ant, double angle_deg)
{
    if (n_ant < 1)
        throw std::invalid_argument("ula_steering: n_ant must be >= 1");
    const double s = std::sin(deg2rad(angle_deg));
    CVector a(n_ant);
    for (int m = 0; m < n_ant; ++m)
        a(m) = std::exp(cdouble(0.0, kPi * m * s));
    return a;
}

CMatrix correlation_matrix(int n_ant, double mean_angle_deg, double angular_spread_deg)
{
    if (n_ant < 1)
        throw std::invalid_argument("correlation_matrix: n_ant must be >= 1");
    if (!(angular_spread_deg > 0))
        throw std::invalid_argument("correlation_matrix: angular spread must be positive; "
                                    "use the steering outer product for a single ray");

    const double mean = deg2rad(mean_angle_deg);
    const double spread = deg2rad(angular_spread_deg);

    std::vector<cdouble> lag(static_cast<std::size_t>(n_ant));
    lag[0] = 1.0;
    for (int d = 1; d < n_ant; ++d)
        lag[static_cast<std::size_t>(d)] = laplacian_lag(d, mean, spread);

    CMatrix r(n_ant, n_ant);
    for (int p = 0; p < n_ant; ++p)
        for (int q = 0; q < n_ant; ++q)
            r(p, q) = p >= q ? lag[static_cast<std::size_t>(p - q)] : std::conj(lag[static_cast<std::size_t>(q - p)]);
    return r;
}

CMatrix psd_sqrt(const CMatrix &r)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(r);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("psd_sqrt: eigendecomposition failed");
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
}

std::vector<double> subcarrier_frequencies(const ChannelConfig &cfg)
{
    std::vector<int> index;
    index.reserve(kRuTones);
    for (int k = -122; k <= 122; ++k)
        if (std::abs(k) >= 2)
            index.push_back(k);

    std::vector<double> f;
    for (std::size_t i = 0; i < index.size(); i += static_cast<std::size_t>(cfg.subcarrier_stride))
        f.push_back(index[i] * cfg.subcarrier_spacing_hz);
    return f;
}

ClusterParam coupled_clusters(std::span<const StaGeometry> geometries, const ChannelConfig &cfg,
                              std::uint64_t aoa_seed)
{
    ClusterParam c;
    c.angular_spread_deg = cfg.angular_spread_deg;
    for (std::size_t k = 0; k < geometries.size(); ++k)
    {
        for (int t = 0; t < cfg.taps_per_cluster; ++t)
        {
            c.tap_delays_ns.push_back(t * cfg.tap_spacing_ns);
            c.tap_powers_db.push_back(-cfg.tap_decay_db * t);
            c.cluster_of_tap.push_back(k);
        }
        std::mt19937_64 rng(child_seed(aoa_seed, geometries[k].id));
        c.mean_aod_deg.push_back(geometries[k].los_aod_deg);
        c.mean_aoa_deg.push_back(std::uniform_real_distribution<double>(0.0, 180.0)(rng));
        c.cluster_of_sta.push_back(k);
    }
    return c;
}

ChannelModel::ChannelModel(std::vector<StaGeometry> geometries, ClusterParam clusters, Regime regime,
                           const ChannelConfig &cfg)
    : geometries_(std::move(geometries)), clusters_(std::move(clusters)), regime_(regime), cfg_(cfg),
      freqs_(subcarrier_frequencies(cfg))
{
    cfg_.validate();
    if (geometries_.empty())
        throw std::invalid_argument("ChannelModel: no STAs");

    const auto n_taps = clusters_.tap_delays_ns.size();
    if (clusters_.tap_powers_db.size() != n_taps || clusters_.cluster_of_tap.size() != n_taps ||
        clusters_.mean_aoa_deg.size() != clusters_.n_clusters() ||
        clusters_.cluster_of_sta.size() != geometries_.size())
        throw std::invalid_argument("ChannelModel: inconsistent cluster dimensions");
    if (!(clusters_.angular_spread_deg > 0))
        throw std::invalid_argument("ChannelModel: angular spread must be positive");

    // Normalise each cluster's power-delay profile to unit total power.
    std::vector<double> cluster_power(clusters_.n_clusters(), 0.0);
    for (std::size_t t = 0; t < n_taps; ++t)
    {
        if (clusters_.cluster_of_tap[t] >= clusters_.n_clusters())
            throw std::invalid_argument("ChannelModel: tap assigned to unknown cluster");
        cluster_power[clusters_.cluster_of_tap[t]] += db2lin(clusters_.tap_powers_db[t]);
    }
    tap_amplitude_.resize(n_taps);
    for (std::size_t t = 0; t < n_taps; ++t)
        tap_amplitude_[t] =
            std::sqrt(db2lin(clusters_.tap_powers_db[t]) / cluster_power[clusters_.cluster_of_tap[t]]);

    for (std::size_t k = 0; k < geometries_.size(); ++k)
    {
        const auto &g = geometries_[k];
        g.validate();
        if (regime_ == Regime::LoS && g.distance_m > cfg_.breakpoint_m)
            throw std::invalid_argument("ChannelModel: LoS regime requires distance within the breakpoint (STA " +
                                        std::to_string(k) + ")");

        const std::size_t c = clusters_.cluster_of_sta[k];
        if (c >= clusters_.n_clusters())
            throw std::invalid_argument("ChannelModel: STA mapped to unknown cluster");
        if (std::abs(clusters_.mean_aod_deg[c] - g.los_aod_deg) > 1e-9)
            throw std::invalid_argument("ChannelModel: cluster mean AoD must equal the LoS AoD of its STA");

        StaPlan plan;
        for (std::size_t t = 0; t < n_taps; ++t)
            if (clusters_.cluster_of_tap[t] == c)
                plan.taps.push_back(t);
        if (plan.taps.empty())
            throw std::invalid_argument("ChannelModel: cluster without taps");

        const double aoa = clusters_.mean_aoa_deg[c];
        plan.tx_sqrt = psd_sqrt(correlation_matrix(cfg_.n_tx, clusters_.mean_aod_deg[c], clusters_.angular_spread_deg));
        plan.rx_sqrt = g.n_rx > 1 ? psd_sqrt(correlation_matrix(g.n_rx, aoa, clusters_.angular_spread_deg))
                                  : CMatrix::Identity(1, 1);
        plan.los = ula_steering(g.n_rx, aoa) * ula_steering(cfg_.n_tx, g.los_aod_deg).adjoint();
        plans_.push_back(std::move(plan));
    }
}

ChannelRealization ChannelModel::draw(std::uint64_t seed) const
{
    ChannelRealization out;
    out.tone_freqs_hz = freqs_;
    out.regime = regime_;
    out.rng_seed = seed;

    const double k = db2lin(cfg_.k_factor_db);
    const bool los = regime_ == Regime::LoS;
    const double nlos_scale = los ? std::sqrt(1.0 / (k + 1.0)) : 1.0;
    const double los_scale = std::sqrt(k / (k + 1.0));
    const int n_tx = cfg_.n_tx;

    out.h.resize(geometries_.size());
    for (std::size_t s = 0; s < geometries_.size(); ++s)
    {
        const auto &g = geometries_[s];
        const auto &plan = plans_[s];
        out.pathloss_db.push_back(pathloss_db(g.distance_m, cfg_.breakpoint_m, cfg_.pathloss_intercept_db));

        std::mt19937_64 rng(child_seed(seed, g.id));
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

        auto &tones = out.h[s];
        tones.assign(freqs_.size(), CMatrix::Zero(g.n_rx, n_tx));

        bool first = true;
        for (const auto t : plan.taps)
        {
            CMatrix gauss(g.n_rx, n_tx);
            for (Eigen::Index j = 0; j < gauss.size(); ++j)
            {
                const double re = normal(rng);
                gauss.data()[j] = cdouble(re, normal(rng));
            }
            CMatrix tap = (tap_amplitude_[t] * nlos_scale) * (plan.rx_sqrt * gauss * plan.tx_sqrt);
            if (los && first)
                tap += los_scale * plan.los;
            first = false;

            const double tau = clusters_.tap_delays_ns[t] * 1e-9;
            for (std::size_t f = 0; f < freqs_.size(); ++f)
                tones[f] += std::exp(cdouble(0.0, -2.0 * kPi * freqs_[f] * tau)) * tap;
        }
    }
    return out;
}

ChannelRealization draw_realization(std::span<const StaGeometry> geometries, const ClusterParam &clusters,
                                    Regime regime, std::uint64_t seed, const ChannelConfig &cfg)
{
    return ChannelModel({geometries.begin(), geometries.end()}, clusters, regime, cfg).draw(seed);
}

void write_realization_csv(std::ostream &os, const ChannelRealization &real)
{
    os << "sta,subcarrier,rx,tx,re,im\n";
    for (std::size_t s = 0; s < real.n_sta(); ++s)
        for (std::size_t f = 0; f < real.n_tones(); ++f)
        {
            const auto &m = real.h[s][f];
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                    os << s << ',' << f << ',' << r << ',' << c << ',' << format_double(m(r, c).real()) << ','
                       << format_double(m(r, c).imag()) << '\n';
        }
}

} // namespace axmu
