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

#ifndef AXMU_PRECODING_HPP
#define AXMU_PRECODING_HPP

#include "axmu/airtime.hpp"
#include "axmu/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace axmu
{

// Steering matrix for one subcarrier: n_tx x n_ss with orthonormal columns.
using SteeringMatrix = CMatrix;

struct GivensAngles
{
    std::vector<double> phi; // [0, 2pi)
    std::vector<double> psi; // [0, pi/2]
    std::vector<std::uint32_t> phi_code; // empty until quantized
    std::vector<std::uint32_t> psi_code;
};

struct CompressedBeamformingReport
{
    int n_rows = 0;
    int n_cols = 0;
    int b_phi = 0; // 0 while unquantized
    int b_psi = 0;
    std::vector<GivensAngles> tones;

    bool quantized() const { return b_phi > 0; }
    void validate() const;
};

/// First n_ss right-singular vectors of H, strongest first. Each column is
/// rotated so that its last nonzero entry is real and non-negative.
/// Throws if n_ss exceeds the numerical rank of H.
SteeringMatrix svd_v(const CMatrix &h, int n_ss);

GivensAngles givens_decompose(const SteeringMatrix &v);
CompressedBeamformingReport givens_decompose(std::span<const SteeringMatrix> v);

// Angle <-> code maps of the midpoint codebooks.
double phi_codeword(std::uint32_t code, int bits);
double psi_codeword(std::uint32_t code, int bits);
std::uint32_t phi_quantize(double phi, int bits);
std::uint32_t psi_quantize(double psi, int bits);

// Snaps every angle to its codebook and stores the codes; angle fields hold
// the codeword values afterwards.
CompressedBeamformingReport quantize(const CompressedBeamformingReport &report, int b_phi, int b_psi);

SteeringMatrix reconstruct(const GivensAngles &angles, int n_rows, int n_cols);
std::vector<SteeringMatrix> reconstruct(const CompressedBeamformingReport &report);

// max |A D - B| over entries, with D the per-column phase best aligning A to B.
double phase_aligned_error(const CMatrix &a, const CMatrix &b);

// sqrt(n - ||A^H B||_F^2) for n-column semi-unitary A and B.
double chordal_distance(const SteeringMatrix &a, const SteeringMatrix &b);

/// What the AP ends up steering with after a sounding exchange: SVD of each
/// tone, Givens compression, quantization with `bits`, reconstruction.
std::vector<SteeringMatrix> fed_back_steering(std::span<const CMatrix> h_tones, int n_ss, AngleBits bits);

// Compression, quantization and reconstruction of already extracted V.
std::vector<SteeringMatrix> requantize(std::span<const SteeringMatrix> v, AngleBits bits);

// Integer-code serialization for oracle cross-checks.
void write_report_csv(std::ostream &os, const CompressedBeamformingReport &report);
std::string report_to_json(const CompressedBeamformingReport &report);

} // namespace axmu

#endif
