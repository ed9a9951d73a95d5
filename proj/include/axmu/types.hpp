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

#ifndef AXMU_TYPES_HPP
#define AXMU_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>

namespace axmu
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }

inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }

// SplitMix64 finaliser. Child seeds for (scenario, cycle) work items are
// derived from the master seed so that any worker schedule reproduces the
// serial random stream.
inline constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t a)
{
    return mix64(mix64(master) ^ (a + 0x632BE59BD9B4E019ULL));
}

inline constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b)
{
    return child_seed(child_seed(master, a), b);
}

} // namespace axmu

#endif
