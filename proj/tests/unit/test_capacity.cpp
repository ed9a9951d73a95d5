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

#include "../gen.hpp"

#include <doctest.h>

#include <Eigen/QR>

#include <cmath>

using namespace axmu;

namespace
{

// Total noise of -5 dBm over 20 MHz, so a unit channel at 20 dBm sits at 25 dB.
LinkBudget snr25()
{
    LinkBudget b;
    b.noise_psd_dbm_hz = -5.0 - 10.0 * std::log10(20e6);
    return b;
}

LinkBudget at_snr(double snr_db)
{
    LinkBudget b = snr25();
    b.tx_power_dbm = 20.0 - 25.0 + snr_db;
    return b;
}

CMatrix row(int n, int k)
{
    CMatrix r = CMatrix::Zero(1, n);
    r(0, k) = 1.0;
    return r;
}

CMatrix col(int n, int k)
{
    return row(n, k).transpose();
}

struct MuCase
{
    std::vector<ToneChannels> h;
    std::vector<ToneSteering> v;
};

// Random single-stream MU instance with ideal steering.
MuCase random_mu(test::Rng &rng, int n_tx, int n_rx, int n_sta, int n_tones)
{
    MuCase c{std::vector<ToneChannels>(n_sta), std::vector<ToneSteering>(n_sta)};
    for (int k = 0; k < n_sta; ++k)
        for (int f = 0; f < n_tones; ++f)
        {
            c.h[k].push_back(test::gaussian(rng, n_rx, n_tx));
            c.v[k].push_back(svd_v(c.h[k].back(), 1));
        }
    return c;
}

} // namespace

TEST_SUITE("capacity")
{
    TEST_CASE("unit 1x1 link at 25 dB")
    {
        const std::vector<CMatrix> h{CMatrix::Ones(1, 1)};
        const std::vector<SteeringMatrix> v{CMatrix::Ones(1, 1)};
        CHECK(su_capacity(h, v, snr25()) == doctest::Approx(166187504.82425612).epsilon(1e-12));
    }

    TEST_CASE("zero channel carries nothing")
    {
        const std::vector<CMatrix> h{CMatrix::Zero(2, 4)};
        const std::vector<SteeringMatrix> v{col(4, 0)};
        CHECK(su_capacity(h, v, snr25()) == 0.0);
    }

    TEST_CASE("doubling bandwidth helps sublinearly at fixed power")
    {
        test::Rng rng(11);
        std::vector<CMatrix> h;
        std::vector<SteeringMatrix> v;
        for (int f = 0; f < 8; ++f)
        {
            h.push_back(test::gaussian(rng, 2, 4));
            v.push_back(svd_v(h.back(), 2));
        }
        const LinkBudget b = snr25();
        LinkBudget wide = b;
        wide.bandwidth_hz *= 2;
        const double c1 = su_capacity(h, v, b);
        const double c2 = su_capacity(h, v, wide);
        CHECK(c2 > c1);
        CHECK(c2 < 2 * c1);
    }

    TEST_CASE("path loss lowers capacity monotonically")
    {
        const std::vector<CMatrix> h{CMatrix::Ones(1, 1)};
        const std::vector<SteeringMatrix> v{CMatrix::Ones(1, 1)};
        double last = 1e300;
        for (double pl = 0; pl <= 60; pl += 10)
        {
            LinkBudget b = snr25();
            b.pathloss_db = {pl};
            const double c = su_capacity(h, v, b);
            CHECK(c < last);
            last = c;
        }
    }

    TEST_CASE("orthogonal users each get the SU rate at 1/K power")
    {
        for (int k_sta : {2, 4})
        {
            std::vector<ToneChannels> h(k_sta);
            std::vector<ToneSteering> v(k_sta);
            for (int k = 0; k < k_sta; ++k)
            {
                h[k] = {row(4, k), row(4, k)};
                v[k] = {col(4, k), col(4, k)};
            }
            const auto mu = mu_capacity(h, v, snr25());
            LinkBudget share = snr25();
            share.tx_power_dbm -= 10.0 * std::log10(k_sta);
            const double su = su_capacity(h[0], v[0], share);
            for (double c : mu)
                CHECK(c == doctest::Approx(su).epsilon(1e-12));
        }
    }

    TEST_CASE("identical users lose to SU at every SNR")
    {
        // Per-user SINR is x/(1+x) < 1 with x = rho/2, so the MU sum is
        // 2 log2(1 + x/(1+x)) against log2(1 + 2x) for SU. The two agree to
        // first order only as SNR -> 0.
        const std::vector<ToneChannels> h{{row(2, 0)}, {row(2, 0)}};
        const std::vector<ToneSteering> v{{col(2, 0)}, {col(2, 0)}};
        for (double snr_db = -30; snr_db <= 40; snr_db += 2.5)
        {
            const LinkBudget b = at_snr(snr_db);
            const auto mu = mu_capacity(h, v, b);
            const double su = su_capacity(h[0], v[0], b);
            CHECK(mu[0] + mu[1] < su);
            const double sinr = std::exp2(mu[0] / b.bandwidth_hz) - 1.0;
            CHECK(sinr < 1.0);
        }
        const LinkBudget low = at_snr(-30);
        const auto mu = mu_capacity(h, v, low);
        const double su = su_capacity(h[0], v[0], low);
        CHECK((su - mu[0] - mu[1]) / su < 1e-3);
    }

    TEST_CASE("single STA MU equals SU")
    {
        test::Rng rng(5);
        for (int trial = 0; trial < 20; ++trial)
        {
            const int n_rx = test::uniform_int(rng, 1, 3);
            const int n_ss = test::uniform_int(rng, 1, n_rx);
            ToneChannels h;
            ToneSteering v;
            for (int f = 0; f < 4; ++f)
            {
                h.push_back(test::gaussian(rng, n_rx, 8));
                v.push_back(svd_v(h.back(), n_ss));
            }
            const std::vector<ToneChannels> hs{h};
            const std::vector<ToneSteering> vs{v};
            CHECK(mu_capacity(hs, vs, snr25())[0] == doctest::Approx(su_capacity(h, v, snr25())).epsilon(1e-12));
        }
    }

    TEST_CASE("relabelling STAs permutes the outputs")
    {
        test::Rng rng(7);
        for (int trial = 0; trial < 20; ++trial)
        {
            auto c = random_mu(rng, 8, 2, 4, 3);
            const auto base = mu_capacity(c.h, c.v, snr25());
            std::swap(c.h[0], c.h[3]);
            std::swap(c.v[0], c.v[3]);
            std::swap(c.h[1], c.h[2]);
            std::swap(c.v[1], c.v[2]);
            const auto perm = mu_capacity(c.h, c.v, snr25());
            CHECK(perm[0] == doctest::Approx(base[3]).epsilon(1e-12));
            CHECK(perm[1] == doctest::Approx(base[2]).epsilon(1e-12));
            CHECK(perm[2] == doctest::Approx(base[1]).epsilon(1e-12));
            CHECK(perm[3] == doctest::Approx(base[0]).epsilon(1e-12));
        }
    }

    TEST_CASE("MMSE SINR agrees with the log-det form")
    {
        test::Rng rng(9);
        for (int trial = 0; trial < 100; ++trial)
        {
            const int n_sta = test::uniform_int(rng, 2, 4);
            const int n_rx = test::uniform_int(rng, 1, 2);
            const auto c = random_mu(rng, 8, n_rx, n_sta, 2);
            LinkBudget b = snr25();
            b.tx_power_dbm = test::uniform(rng, -10, 40);
            const auto a = mu_capacity(c.h, c.v, b);
            const auto m = mu_capacity_mmse_sinr(c.h, c.v, b);
            for (int k = 0; k < n_sta; ++k)
                CHECK(std::abs(a[k] - m[k]) <= 1e-9 * std::max(1.0, a[k]));
        }
    }

    TEST_CASE("zero forcing removes inter-user interference")
    {
        test::Rng rng(13);
        for (int trial = 0; trial < 20; ++trial)
        {
            const auto c = random_mu(rng, 8, 1, 4, 1);
            CMatrix stacked(8, 4);
            for (int k = 0; k < 4; ++k)
                stacked.col(k) = c.v[k][0];
            CMatrix w = stacked.completeOrthogonalDecomposition().pseudoInverse().adjoint();
            w.colwise().normalize();

            const LinkBudget b = snr25();
            const double rho = b.tx_power_mw() / 4.0 / b.noise_power_mw();
            const auto zf = mu_capacity(c.h, c.v, b, MuPrecoder::ZeroForcing);
            const auto sv = mu_capacity(c.h, c.v, b);
            for (int k = 0; k < 4; ++k)
            {
                const double g = (c.h[k][0] * w.col(k)).squaredNorm();
                CHECK(zf[k] == doctest::Approx(b.bandwidth_hz * std::log2(1 + rho * g)).epsilon(1e-9));
                for (int j = 0; j < 4; ++j)
                    if (j != k)
                        CHECK(std::abs((c.h[k][0] * w.col(j))(0, 0)) < 1e-9);
            }
            double zf_sum = 0, sv_sum = 0;
            for (int k = 0; k < 4; ++k)
            {
                zf_sum += zf[k];
                sv_sum += sv[k];
            }
            CHECK(zf_sum > 0);
            CHECK(sv_sum > 0);
        }
    }

    TEST_CASE("effective capacity examples")
    {
        const std::vector<std::vector<double>> caps{{100e6, 50e6}, {80e6, 40e6}};
        CHECK(effective_capacity(caps, 0.0) == doctest::Approx(135e6));
        CHECK(effective_capacity(caps, 0.5) == doctest::Approx(67.5e6));
        CHECK(effective_capacity(caps, 0.1) == doctest::Approx(121.5e6));
        CHECK_THROWS_AS(effective_capacity(caps, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(effective_capacity({}, 0.1), std::invalid_argument);
    }

    TEST_CASE("effective capacity is linear in capacity and in 1 - O")
    {
        test::Rng rng(17);
        for (int trial = 0; trial < 50; ++trial)
        {
            std::vector<std::vector<double>> a(5), b(5), sum(5);
            for (int n = 0; n < 5; ++n)
                for (int k = 0; k < 3; ++k)
                {
                    a[n].push_back(test::uniform(rng, 0, 1e8));
                    b[n].push_back(test::uniform(rng, 0, 1e8));
                    sum[n].push_back(a[n][k] + b[n][k]);
                }
            const double o = test::uniform(rng, 0, 0.99);
            CHECK(effective_capacity(sum, o) ==
                  doctest::Approx(effective_capacity(a, o) + effective_capacity(b, o)).epsilon(1e-12));
            CHECK(effective_capacity(a, o) == doctest::Approx((1 - o) * effective_capacity(a, 0)).epsilon(1e-12));
        }
    }

    TEST_CASE("idealized mode")
    {
        SoundingConfig cfg;
        const PhyTiming phy;
        const LinkBudget b;
        IdealizedSetup s;
        s.fading = false;
        s.n_cycles = 3;
        for (int n : {1, 2, 4, 8})
        {
            const auto t = idealized_overhead_mode(cfg, phy, b, n, s);
            SoundingConfig c = cfg;
            c.n_sta = n;
            c.feedback_type = n == 1 ? FeedbackType::SU : FeedbackType::MU;
            CHECK(t.overhead_ratio == sounding_overhead(c, phy).overhead_ratio);
            REQUIRE(t.capacity_bps.size() == 3);
            REQUIRE(t.capacity_bps[0].size() == static_cast<std::size_t>(n));
            const double per = 20e6 * std::log2(1 + db2lin(25.0) / n);
            CHECK(t.capacity_bps[2][n - 1] == doctest::Approx(per).epsilon(1e-14));
            CHECK(t.effective_capacity_bps == doctest::Approx((1 - t.overhead_ratio) * n * per).epsilon(1e-12));
        }

        s.fading = true;
        s.n_cycles = 400;
        const auto faded = idealized_overhead_mode(cfg, phy, b, 4, s);
        const auto again = idealized_overhead_mode(cfg, phy, b, 4, s);
        CHECK(faded.capacity_bps == again.capacity_bps);
        s.fading = false;
        const auto flat = idealized_overhead_mode(cfg, phy, b, 4, s);
        CHECK(faded.effective_capacity_bps < flat.effective_capacity_bps); // Jensen

        CHECK_THROWS_AS(idealized_overhead_mode(cfg, phy, b, 3, s), std::invalid_argument);
        s.n_cycles = 0;
        CHECK_THROWS_AS(idealized_overhead_mode(cfg, phy, b, 2, s), std::invalid_argument);
    }

    TEST_CASE("trace rows")
    {
        const auto t = make_trace({{1e6, 2e6}, {3e6, 4e6}, {5e6, 6e6}}, 0.25);
        CsvTable table{trace_csv_header(), {}};
        append_trace_rows(table, "x", t);
        CHECK(table.rows.size() == 6);
        const auto back = parse_csv(table.str());
        CHECK(back.header == trace_csv_header());
        CHECK(back.rows[5][0] == "x");
        CHECK(back.rows[5][1] == "2");
        CHECK(back.rows[5][2] == "1");
        CHECK(std::stod(back.rows[5][3]) == 6e6);
        CHECK(std::stod(back.rows[0][5]) == t.effective_capacity_bps);
    }

    TEST_CASE("shape validation")
    {
        const std::vector<CMatrix> h{CMatrix::Ones(1, 2)};
        const std::vector<SteeringMatrix> v3{CMatrix::Ones(3, 1)};
        CHECK_THROWS_AS(su_capacity(h, v3, snr25()), std::invalid_argument);
        CHECK_THROWS_AS(su_capacity({}, {}, snr25()), std::invalid_argument);
        LinkBudget bad;
        bad.bandwidth_hz = 0;
        const std::vector<SteeringMatrix> v{CMatrix::Ones(2, 1)};
        CHECK_THROWS_AS(su_capacity(h, v, bad), std::invalid_argument);

        const std::vector<ToneChannels> hs{{row(2, 0)}, {row(2, 1)}, {row(2, 1)}};
        const std::vector<ToneSteering> vs{{col(2, 0)}, {col(2, 1)}, {col(2, 1)}};
        CHECK_THROWS_AS(mu_capacity(hs, vs, snr25()), std::invalid_argument);
    }
}
