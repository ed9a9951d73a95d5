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

#include "axmu/capacity.hpp"

#include "axmu/csv.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>
#include <random>
#include <stdexcept>

namespace axmu
{

namespace
{

double log2det_hpd(const CMatrix &a)
{
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("log2det: matrix is not positive definite");
    double acc = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        acc += std::log2(llt.matrixL()(i, i).real());
    return 2 * acc;
}

// rho such that the per-stream receive SNR before fading is rho*|g|^2.
double stream_snr(const LinkBudget &b, std::size_t sta, double power_fraction)
{
    return b.tx_power_mw() * power_fraction * b.gain(sta) / b.noise_power_mw();
}

void check_tone_shapes(std::span<const CMatrix> h, std::span<const SteeringMatrix> v)
{
    if (h.empty() || h.size() != v.size())
        throw std::invalid_argument("capacity: channel and steering tone counts differ or are empty");
    for (std::size_t f = 0; f < h.size(); ++f)
        if (h[f].cols() != v[f].rows() || v[f].cols() < 1)
            throw std::invalid_argument("capacity: steering rows must equal transmit antennas");
}

struct MuLayout
{
    std::size_t n_sta;
    std::size_t n_tones;
};

MuLayout check_mu(std::span<const ToneChannels> h, std::span<const ToneSteering> v)
{
    if (h.empty() || h.size() != v.size())
        throw std::invalid_argument("mu_capacity: need one steering set per STA");
    const std::size_t n_tones = h.front().size();
    const auto n_tx = h.front().empty() ? 0 : h.front().front().cols();
    Eigen::Index streams = 0;
    for (std::size_t k = 0; k < h.size(); ++k)
    {
        if (h[k].size() != n_tones || v[k].size() != n_tones)
            throw std::invalid_argument("mu_capacity: STAs disagree on the tone count");
        check_tone_shapes(h[k], v[k]);
        if (h[k].front().cols() != n_tx)
            throw std::invalid_argument("mu_capacity: STAs disagree on transmit antennas");
        streams += v[k].front().cols();
    }
    if (streams > n_tx)
        throw std::invalid_argument("mu_capacity: total streams exceed transmit antennas");
    return {h.size(), n_tones};
}

// Column-normalised pseudo-inverse of the stacked steering matrices: stream
// blocks of other STAs fall into the null space of each STA's fed-back V.
std::vector<ToneSteering> zero_forcing(std::span<const ToneSteering> v)
{
    const std::size_t n_tones = v.front().size();
    std::vector<ToneSteering> w(v.size(), ToneSteering(n_tones));
    for (std::size_t f = 0; f < n_tones; ++f)
    {
        Eigen::Index total = 0;
        for (const auto &vk : v)
            total += vk[f].cols();
        CMatrix stacked(v.front()[f].rows(), total);
        Eigen::Index at = 0;
        for (const auto &vk : v)
        {
            stacked.middleCols(at, vk[f].cols()) = vk[f];
            at += vk[f].cols();
        }
        CMatrix zf = stacked * (stacked.adjoint() * stacked).inverse();
        zf.colwise().normalize();
        at = 0;
        for (std::size_t k = 0; k < v.size(); ++k)
        {
            w[k][f] = zf.middleCols(at, v[k][f].cols());
            at += v[k][f].cols();
        }
    }
    return w;
}

} // namespace

void LinkBudget::validate() const
{
    if (!(bandwidth_hz > 0))
        throw std::invalid_argument("LinkBudget: bandwidth_hz must be positive");
    if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_psd_dbm_hz) || !std::isfinite(noise_figure_db))
        throw std::invalid_argument("LinkBudget: non-finite power or noise level");
    for (double pl : pathloss_db)
        if (!std::isfinite(pl))
            throw std::invalid_argument("LinkBudget: non-finite path loss");
}

double LinkBudget::noise_power_mw() const
{
    return db2lin(noise_psd_dbm_hz + noise_figure_db) * bandwidth_hz;
}

double LinkBudget::gain(std::size_t sta) const
{
    return sta < pathloss_db.size() ? db2lin(-pathloss_db[sta]) : 1.0;
}

double su_capacity(std::span<const CMatrix> h, std::span<const SteeringMatrix> v, const LinkBudget &budget,
                   std::size_t sta)
{
    budget.validate();
    check_tone_shapes(h, v);
    double acc = 0;
    for (std::size_t f = 0; f < h.size(); ++f)
    {
        const double rho = stream_snr(budget, sta, 1.0 / static_cast<double>(v[f].cols()));
        const CMatrix g = h[f] * v[f];
        acc += log2det_hpd(CMatrix::Identity(g.rows(), g.rows()) + rho * g * g.adjoint());
    }
    return budget.bandwidth_hz * acc / static_cast<double>(h.size());
}

std::vector<double> mu_capacity(std::span<const ToneChannels> h, std::span<const ToneSteering> v,
                                const LinkBudget &budget, MuPrecoder precoder)
{
    budget.validate();
    const auto layout = check_mu(h, v);
    const std::vector<ToneSteering> zf = precoder == MuPrecoder::ZeroForcing ? zero_forcing(v) : std::vector<ToneSteering>{};
    const std::span<const ToneSteering> w = precoder == MuPrecoder::ZeroForcing ? std::span<const ToneSteering>(zf) : v;
    const double per_sta = 1.0 / static_cast<double>(layout.n_sta);

    std::vector<double> out(layout.n_sta, 0.0);
    for (std::size_t k = 0; k < layout.n_sta; ++k)
    {
        double acc = 0;
        for (std::size_t f = 0; f < layout.n_tones; ++f)
        {
            const auto n_rx = h[k][f].rows();
            CMatrix q = CMatrix::Identity(n_rx, n_rx);
            CMatrix signal;
            for (std::size_t j = 0; j < layout.n_sta; ++j)
            {
                const double rho = stream_snr(budget, k, per_sta / static_cast<double>(w[j][f].cols()));
                const CMatrix g = h[k][f] * w[j][f];
                if (j == k)
                    signal = rho * g * g.adjoint();
                else
                    q.noalias() += rho * g * g.adjoint();
            }
            acc += log2det_hpd(q + signal) - log2det_hpd(q);
        }
        out[k] = std::max(0.0, budget.bandwidth_hz * acc / static_cast<double>(layout.n_tones));
    }
    return out;
}

std::vector<double> mu_capacity_mmse_sinr(std::span<const ToneChannels> h, std::span<const ToneSteering> v,
                                          const LinkBudget &budget)
{
    budget.validate();
    const auto layout = check_mu(h, v);
    for (const auto &vk : v)
        if (vk.front().cols() != 1)
            throw std::invalid_argument("mu_capacity_mmse_sinr: every STA must receive a single stream");
    const double rho_scale = 1.0 / static_cast<double>(layout.n_sta);

    std::vector<double> out(layout.n_sta, 0.0);
    for (std::size_t k = 0; k < layout.n_sta; ++k)
    {
        const double rho = stream_snr(budget, k, rho_scale);
        double acc = 0;
        for (std::size_t f = 0; f < layout.n_tones; ++f)
        {
            const auto n_rx = h[k][f].rows();
            CMatrix q = CMatrix::Identity(n_rx, n_rx);
            for (std::size_t j = 0; j < layout.n_sta; ++j)
                if (j != k)
                {
                    const CVector g = h[k][f] * v[j][f];
                    q.noalias() += rho * g * g.adjoint();
                }
            const CVector hk = h[k][f] * v[k][f];
            const CVector filt = q.ldlt().solve(hk); // MMSE direction Q^-1 h
            const double sinr = rho * hk.dot(filt).real();
            acc += std::log2(1.0 + sinr);
        }
        out[k] = budget.bandwidth_hz * acc / static_cast<double>(layout.n_tones);
    }
    return out;
}

double effective_capacity(const std::vector<std::vector<double>> &capacity_bps, double overhead_ratio)
{
    if (capacity_bps.empty())
        throw std::invalid_argument("effective_capacity: empty trace");
    if (!(overhead_ratio >= 0 && overhead_ratio < 1))
        throw std::invalid_argument("effective_capacity: overhead ratio must be in [0, 1)");
    double acc = 0;
    for (const auto &cycle : capacity_bps)
        for (double c : cycle)
            acc += (1.0 - overhead_ratio) * c;
    return acc / static_cast<double>(capacity_bps.size());
}

CapacityTrace make_trace(std::vector<std::vector<double>> capacity_bps, double overhead_ratio)
{
    CapacityTrace t;
    t.effective_capacity_bps = effective_capacity(capacity_bps, overhead_ratio);
    t.capacity_bps = std::move(capacity_bps);
    t.overhead_ratio = overhead_ratio;
    return t;
}

std::vector<std::string> trace_csv_header()
{
    return {"scenario_id", "cycle", "sta", "capacity_bps", "overhead_ratio", "effective_capacity_bps"};
}

void append_trace_rows(CsvTable &table, const std::string &scenario_id, const CapacityTrace &trace)
{
    for (std::size_t n = 0; n < trace.n_cycles(); ++n)
        for (std::size_t k = 0; k < trace.capacity_bps[n].size(); ++k)
            table.add_row({scenario_id, std::to_string(n), std::to_string(k), format_double(trace.capacity_bps[n][k]),
                           format_double(trace.overhead_ratio), format_double(trace.effective_capacity_bps)});
}

CapacityTrace idealized_overhead_mode(const SoundingConfig &cfg, const PhyTiming &phy, const LinkBudget &budget,
                                      int n_sta, const IdealizedSetup &setup)
{
    if (n_sta != 1 && n_sta != 2 && n_sta != 4 && n_sta != 8)
        throw std::invalid_argument("idealized_overhead_mode: n_sta must be 1, 2, 4 or 8");
    if (setup.n_cycles < 1)
        throw std::invalid_argument("idealized_overhead_mode: n_cycles must be >= 1");
    budget.validate();

    SoundingConfig s = cfg;
    s.n_sta = n_sta;
    s.feedback_type = n_sta == 1 ? FeedbackType::SU : FeedbackType::MU;
    const double o = sounding_overhead(s, phy).overhead_ratio;

    const double snr = db2lin(setup.reference_snr_db) / n_sta;
    std::vector<std::vector<double>> caps(static_cast<std::size_t>(setup.n_cycles));
    for (std::size_t n = 0; n < caps.size(); ++n)
    {
        std::mt19937_64 rng(child_seed(setup.seed, n));
        std::exponential_distribution<double> fade(1.0);
        for (int k = 0; k < n_sta; ++k)
        {
            const double x = setup.fading ? fade(rng) : 1.0;
            caps[n].push_back(budget.bandwidth_hz * std::log2(1.0 + snr * x));
        }
    }
    return make_trace(std::move(caps), o);
}

} // namespace axmu
