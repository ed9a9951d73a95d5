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

#include "../gen.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace axmu;

namespace
{

// Direct adaptive integration of the truncated Laplacian PAS.
cdouble oracle_lag(int lag, double mean_deg, double spread_deg)
{
    using boost::math::quadrature::gauss_kronrod;
    const double mu = deg2rad(mean_deg);
    const double a = std::sqrt(2.0) / deg2rad(spread_deg);
    auto w = [&](double p) { return std::exp(-a * std::abs(p)); };
    auto re = [&](double p) { return w(p) * std::cos(kPi * lag * std::sin(mu + p)); };
    auto im = [&](double p) { return w(p) * std::sin(kPi * lag * std::sin(mu + p)); };
    auto integrate = [](auto f)
    { return gauss_kronrod<double, 61>::integrate(f, -kPi, 0.0, 15, 1e-14) + gauss_kronrod<double, 61>::integrate(f, 0.0, kPi, 15, 1e-14); };
    const double z = integrate(w);
    return {integrate(re) / z, integrate(im) / z};
}

// Asymptotic Kolmogorov p-value of the one-sample KS statistic.
double ks_pvalue(std::vector<double> x, double (*cdf)(double))
{
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double f = cdf(x[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double q = 0;
    for (int k = 1; k <= 100; ++k)
        q += 2 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    return std::clamp(q, 0.0, 1.0);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

ChannelModel make_model(std::vector<StaGeometry> g, Regime regime, const ChannelConfig &cfg, std::uint64_t aoa = 5)
{
    auto cl = coupled_clusters(g, cfg, aoa);
    return ChannelModel(std::move(g), std::move(cl), regime, cfg);
}

} // namespace

TEST_SUITE("channel")
{
    TEST_CASE("path loss")
    {
        CHECK(pathloss_db(1.0, 10.0, 84.0) == doctest::Approx(84.0));
        CHECK(pathloss_db(60.0, 10.0, 84.0) == doctest::Approx(84.0 + 20.0 + 35.0 * std::log10(6.0)));
        // both branches meet at the breakpoint
        CHECK(pathloss_db(10.0, 10.0, 84.0) == doctest::Approx(pathloss_db(10.0 + 1e-9, 10.0, 84.0)));
        CHECK(pathloss_db(10.0, 10.0, 0.0) == doctest::Approx(20.0));
        CHECK_THROWS(pathloss_db(0.0, 10.0, 84.0));
        CHECK_THROWS(pathloss_db(-3.0, 10.0, 84.0));
    }

    TEST_CASE("steering vectors")
    {
        const auto a0 = ula_steering(8, 0.0);
        const auto a180 = ula_steering(8, 180.0);
        for (int m = 0; m < 8; ++m)
        {
            CHECK(std::abs(a0(m) - 1.0) < 1e-15);
            CHECK(std::abs(a180(m) - 1.0) < 1e-12);
        }
        const auto a90 = ula_steering(2, 90.0);
        CHECK(std::abs(a90(1) - cdouble(-1.0, 0.0)) < 1e-15);
        const auto a = ula_steering(5, 33.0);
        for (int m = 0; m < 5; ++m)
            CHECK(std::abs(a(m)) == doctest::Approx(1.0));
    }

    TEST_CASE("correlation matches direct integration")
    {
        for (double spread : {2.0, 10.0, 30.0, 100.0})
            for (double mean : {0.0, 23.0, 90.0, 151.0})
            {
                const auto r = correlation_matrix(8, mean, spread);
                for (int d = 1; d < 8; ++d)
                {
                    CAPTURE(spread);
                    CAPTURE(mean);
                    CAPTURE(d);
                    CHECK(std::abs(r(d, 0) - oracle_lag(d, mean, spread)) < 1e-9);
                }
            }
    }

    TEST_CASE("correlation structure")
    {
        test::Rng rng(3);
        for (int trial = 0; trial < 50; ++trial)
        {
            const int n = test::uniform_int(rng, 1, 8);
            const auto r = correlation_matrix(n, test::uniform(rng, 0, 180), test::uniform(rng, 0.5, 120));
            CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(r(i, i) - 1.0) < 1e-15);
            Eigen::SelfAdjointEigenSolver<CMatrix> eig(r);
            CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
            const CMatrix s = psd_sqrt(r);
            CHECK((s * s - r).cwiseAbs().maxCoeff() < 1e-9);
        }
        CHECK_THROWS(correlation_matrix(4, 0.0, 0.0));
    }

    TEST_CASE("correlation limits")
    {
        // wide spread: close to the uniform-PAS Bessel decay
        CHECK(std::abs(correlation_matrix(2, 0.0, 1e4)(1, 0)) < 0.6);
        CHECK(std::abs(correlation_matrix(2, 0.0, 1e4)(1, 0) - std::cyl_bessel_j(0.0, kPi)) < 1e-3);
        // narrow spread: collapses onto a single ray
        const auto a = ula_steering(8, 40.0);
        const CMatrix ray = a * a.adjoint();
        CHECK((correlation_matrix(8, 40.0, 1e-3) - ray).cwiseAbs().maxCoeff() < 1e-3);
    }

    TEST_CASE("tone grid")
    {
        const ChannelConfig cfg;
        const auto f = subcarrier_frequencies(cfg);
        REQUIRE(f.size() == 31);
        CHECK(f.front() == -122 * 78125.0);
        for (double x : f)
            CHECK(std::abs(x) >= 2 * 78125.0);
        ChannelConfig all = cfg;
        all.subcarrier_stride = 1;
        CHECK(subcarrier_frequencies(all).size() == 242);
    }

    TEST_CASE("pure LoS limit")
    {
        ChannelConfig cfg;
        cfg.k_factor_db = 300;
        cfg.taps_per_cluster = 1;
        std::vector<StaGeometry> g{{8.0, 35.0, 2, 0}};
        const auto cl = coupled_clusters(g, cfg, 9);
        const ChannelModel m(g, cl, Regime::LoS, cfg);
        const auto real = m.draw(11);
        const CMatrix los = ula_steering(2, cl.mean_aoa_deg[0]) * ula_steering(8, 35.0).adjoint();
        for (const auto &h : real.h[0])
            CHECK((h - los).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::JacobiSVD<CMatrix> svd(real.h[0][3]);
        CHECK(svd.singularValues()(1) < 1e-10 * svd.singularValues()(0));
    }

    TEST_CASE("single tap at zero delay is flat in frequency")
    {
        ChannelConfig cfg;
        cfg.taps_per_cluster = 1;
        const auto m = make_model({{20.0, 70.0, 2, 0}}, Regime::NLoS, cfg);
        const auto real = m.draw(4);
        for (const auto &h : real.h[0])
            CHECK((h - real.h[0][0]).cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("NLoS entries are circular Gaussian")
    {
        const auto m = make_model({{20.0, 50.0, 1, 0}}, Regime::NLoS, ChannelConfig{});
        std::vector<double> re, im;
        for (std::uint64_t s = 0; s < 10000; ++s)
        {
            const auto real = m.draw(s);
            re.push_back(real.h[0][7](0, 3).real() * std::sqrt(2.0));
            im.push_back(real.h[0][7](0, 3).imag() * std::sqrt(2.0));
        }
        CHECK(ks_pvalue(re, std_normal_cdf) > 0.01);
        CHECK(ks_pvalue(im, std_normal_cdf) > 0.01);
    }

    TEST_CASE("unit mean small-scale power")
    {
        for (auto regime : {Regime::LoS, Regime::NLoS})
        {
            const auto m = make_model({{6.0, 20.0, 2, 0}}, regime, ChannelConfig{});
            double acc = 0;
            const int n = 3000;
            for (int s = 0; s < n; ++s)
                acc += m.draw(static_cast<std::uint64_t>(s)).h[0][5].squaredNorm();
            CHECK(acc / n == doctest::Approx(16.0).epsilon(0.03));
        }
    }

    TEST_CASE("determinism and seed separation")
    {
        const auto m = make_model({{8.0, 0.0, 1, 0}, {8.0, 60.0, 1, 1}}, Regime::LoS, ChannelConfig{});
        const auto a = m.draw(42);
        const auto b = m.draw(42);
        const auto c = m.draw(43);
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t f = 0; f < a.n_tones(); ++f)
            {
                CHECK(a.h[k][f] == b.h[k][f]);
                CHECK(a.h[k][f] != c.h[k][f]);
            }
        CHECK(a.rng_seed == 42);
        CHECK(a.pathloss_db[0] == doctest::Approx(84.0 + 20 * std::log10(8.0)));
    }

    TEST_CASE("swapping STAs permutes the outputs")
    {
        const StaGeometry s1{7.0, 0.0, 2, 0}, s2{9.0, 80.0, 2, 1};
        const ChannelConfig cfg;
        const auto a = make_model({s1, s2}, Regime::LoS, cfg).draw(5);
        const auto b = make_model({s2, s1}, Regime::LoS, cfg).draw(5);
        for (std::size_t f = 0; f < a.n_tones(); ++f)
        {
            CHECK(a.h[0][f] == b.h[1][f]);
            CHECK(a.h[1][f] == b.h[0][f]);
        }
        CHECK(a.pathloss_db[0] == b.pathloss_db[1]);
    }

    TEST_CASE("model validation")
    {
        const ChannelConfig cfg;
        std::vector<StaGeometry> far{{12.0, 0.0, 1, 0}};
        CHECK_THROWS_AS(make_model(far, Regime::LoS, cfg), std::invalid_argument);
        CHECK_NOTHROW(make_model(far, Regime::NLoS, cfg));

        std::vector<StaGeometry> g{{5.0, 30.0, 1, 0}};
        auto cl = coupled_clusters(g, cfg, 1);
        cl.mean_aod_deg[0] = 31.0; // breaks the cluster/LoS coupling
        CHECK_THROWS_AS(ChannelModel(g, cl, Regime::LoS, cfg), std::invalid_argument);

        CHECK_THROWS(StaGeometry{-1.0, 0.0, 1, 0}.validate());
        CHECK_THROWS(StaGeometry{1.0, 190.0, 1, 0}.validate());
    }

    TEST_CASE("CSV dump")
    {
        const auto real = make_model({{8.0, 0.0, 2, 0}}, Regime::LoS, ChannelConfig{}).draw(1);
        std::ostringstream os;
        write_realization_csv(os, real);
        const std::string text = os.str();
        CHECK(text.rfind("sta,subcarrier,rx,tx,re,im\n", 0) == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 31 * 2 * 8);
    }
}
