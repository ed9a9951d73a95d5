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

#include "axmu/precoding.hpp"

#include "axmu/csv.hpp"

#include <Eigen/SVD>
#include <json.hpp>

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace axmu
{

namespace
{

constexpr double kOrthoTol = 1e-6;

void check_bits(int bits)
{
    if (bits < 1 || bits > 16)
        throw std::invalid_argument("codebook bit width must be in [1, 16], got " + std::to_string(bits));
}

int processed_columns(int n_rows, int n_cols) { return std::min(n_cols, n_rows - 1); }

} // namespace

void CompressedBeamformingReport::validate() const
{
    if (n_rows < 1 || n_cols < 1 || n_cols > n_rows)
        throw std::invalid_argument("report: need 1 <= n_cols <= n_rows");
    const auto count = n_rows > 1 ? givens_angle_count(n_rows, n_cols) : AngleCount{0, 0};
    for (const auto &t : tones)
    {
        if (std::ssize(t.phi) != count.n_phi || std::ssize(t.psi) != count.n_psi)
            throw std::invalid_argument("report: angle list lengths do not match the matrix shape");
        if (quantized())
        {
            if (t.phi_code.size() != t.phi.size() || t.psi_code.size() != t.psi.size())
                throw std::invalid_argument("report: missing angle codes");
            for (auto c : t.phi_code)
                if (c >> b_phi)
                    throw std::invalid_argument("report: phi code out of range");
            for (auto c : t.psi_code)
                if (c >> b_psi)
                    throw std::invalid_argument("report: psi code out of range");
        }
    }
}

SteeringMatrix svd_v(const CMatrix &h, int n_ss)
{
    if (n_ss < 1 || n_ss > std::min(h.rows(), h.cols()))
        throw std::invalid_argument("svd_v: n_ss must be in [1, min(n_rx, n_tx)]");

    Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    if (!(sv(0) > 0) || sv(n_ss - 1) <= 1e-12 * sv(0))
        throw std::domain_error("svd_v: channel rank is below the requested stream count");

    SteeringMatrix v = svd.matrixV().leftCols(n_ss);
    for (int c = 0; c < n_ss; ++c)
    {
        for (Eigen::Index r = v.rows() - 1; r >= 0; --r)
        {
            const double mag = std::abs(v(r, c));
            if (mag > 1e-12)
            {
                v.col(c) *= std::conj(v(r, c)) / mag;
                v(r, c) = mag;
                break;
            }
        }
    }
    return v;
}

GivensAngles givens_decompose(const SteeringMatrix &v_in)
{
    const int nr = static_cast<int>(v_in.rows());
    const int nc = static_cast<int>(v_in.cols());
    if (nc < 1 || nc > nr)
        throw std::invalid_argument("givens_decompose: need 1 <= n_cols <= n_rows");
    const CMatrix gram = v_in.adjoint() * v_in;
    if ((gram - CMatrix::Identity(nc, nc)).cwiseAbs().maxCoeff() > kOrthoTol)
        throw std::invalid_argument("givens_decompose: columns are not orthonormal");

    CMatrix v = v_in;
    for (int c = 0; c < nc; ++c)
    {
        const double mag = std::abs(v(nr - 1, c));
        if (mag > 0)
            v.col(c) *= std::conj(v(nr - 1, c)) / mag;
    }

    GivensAngles out;
    for (int i = 0; i < processed_columns(nr, nc); ++i)
    {
        for (int r = i; r < nr - 1; ++r)
        {
            double phi = std::arg(v(r, i));
            if (phi < 0)
                phi += 2 * kPi;
            if (phi >= 2 * kPi)
                phi = 0;
            out.phi.push_back(phi);
            v.row(r) *= std::polar(1.0, -phi);
        }
        for (int l = i + 1; l < nr; ++l)
        {
            const double psi = std::atan2(v(l, i).real(), v(i, i).real());
            out.psi.push_back(std::clamp(psi, 0.0, kPi / 2));
            const double c = std::cos(psi), s = std::sin(psi);
            const CVector ri = v.row(i).transpose();
            const CVector rl = v.row(l).transpose();
            v.row(i) = (c * ri + s * rl).transpose();
            v.row(l) = (-s * ri + c * rl).transpose();
        }
    }
    return out;
}

CompressedBeamformingReport givens_decompose(std::span<const SteeringMatrix> v)
{
    if (v.empty())
        throw std::invalid_argument("givens_decompose: no subcarriers");
    CompressedBeamformingReport rep;
    rep.n_rows = static_cast<int>(v.front().rows());
    rep.n_cols = static_cast<int>(v.front().cols());
    for (const auto &m : v)
    {
        if (m.rows() != rep.n_rows || m.cols() != rep.n_cols)
            throw std::invalid_argument("givens_decompose: subcarrier shapes differ");
        rep.tones.push_back(givens_decompose(m));
    }
    return rep;
}

// phi: k*pi/2^(b-1) + pi/2^b over [0, 2pi); psi: k*pi/2^(b+1) + pi/2^(b+2)
// over [0, pi/2].
double phi_codeword(std::uint32_t code, int bits)
{
    check_bits(bits);
    return kPi * (2.0 * code + 1.0) / std::ldexp(1.0, bits);
}

double psi_codeword(std::uint32_t code, int bits)
{
    check_bits(bits);
    return kPi * (2.0 * code + 1.0) / std::ldexp(1.0, bits + 2);
}

std::uint32_t phi_quantize(double phi, int bits)
{
    check_bits(bits);
    const auto levels = static_cast<std::int64_t>(1) << bits;
    const double step = 2 * kPi / static_cast<double>(levels);
    auto k = static_cast<std::int64_t>(std::floor((phi - step / 2) / step + 0.5));
    k %= levels;
    if (k < 0)
        k += levels;
    return static_cast<std::uint32_t>(k);
}

std::uint32_t psi_quantize(double psi, int bits)
{
    check_bits(bits);
    const auto levels = static_cast<std::int64_t>(1) << bits;
    const double step = kPi / 2 / static_cast<double>(levels);
    const auto k = static_cast<std::int64_t>(std::floor((psi - step / 2) / step + 0.5));
    return static_cast<std::uint32_t>(std::clamp<std::int64_t>(k, 0, levels - 1));
}

CompressedBeamformingReport quantize(const CompressedBeamformingReport &report, int b_phi, int b_psi)
{
    check_bits(b_phi);
    check_bits(b_psi);
    CompressedBeamformingReport q = report;
    q.b_phi = b_phi;
    q.b_psi = b_psi;
    for (auto &t : q.tones)
    {
        t.phi_code.clear();
        t.psi_code.clear();
        for (auto &a : t.phi)
        {
            t.phi_code.push_back(phi_quantize(a, b_phi));
            a = phi_codeword(t.phi_code.back(), b_phi);
        }
        for (auto &a : t.psi)
        {
            t.psi_code.push_back(psi_quantize(a, b_psi));
            a = psi_codeword(t.psi_code.back(), b_psi);
        }
    }
    return q;
}

SteeringMatrix reconstruct(const GivensAngles &angles, int n_rows, int n_cols)
{
    if (n_cols < 1 || n_cols > n_rows)
        throw std::invalid_argument("reconstruct: need 1 <= n_cols <= n_rows");
    const auto count = n_rows > 1 ? givens_angle_count(n_rows, n_cols) : AngleCount{0, 0};
    if (std::ssize(angles.phi) != count.n_phi || std::ssize(angles.psi) != count.n_psi)
        throw std::invalid_argument("reconstruct: angle counts do not match the matrix shape");

    // M = prod_i D_i prod_l G_li^T, applied to the identity from the right.
    CMatrix m = CMatrix::Identity(n_rows, n_rows);
    std::size_t ip = 0, is = 0;
    for (int i = 0; i < processed_columns(n_rows, n_cols); ++i)
    {
        for (int r = i; r < n_rows - 1; ++r)
            m.col(r) *= std::polar(1.0, angles.phi[ip++]);
        for (int l = i + 1; l < n_rows; ++l)
        {
            const double psi = angles.psi[is++];
            const double c = std::cos(psi), s = std::sin(psi);
            const CVector mi = m.col(i);
            const CVector ml = m.col(l);
            m.col(i) = c * mi + s * ml;
            m.col(l) = -s * mi + c * ml;
        }
    }
    return m.leftCols(n_cols);
}

std::vector<SteeringMatrix> reconstruct(const CompressedBeamformingReport &report)
{
    report.validate();
    std::vector<SteeringMatrix> out;
    out.reserve(report.tones.size());
    for (const auto &t : report.tones)
        out.push_back(reconstruct(t, report.n_rows, report.n_cols));
    return out;
}

double phase_aligned_error(const CMatrix &a, const CMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("phase_aligned_error: shape mismatch");
    double err = 0;
    for (Eigen::Index c = 0; c < a.cols(); ++c)
    {
        const cdouble inner = a.col(c).dot(b.col(c)); // a^H b
        const cdouble rot = std::abs(inner) > 0 ? inner / std::abs(inner) : cdouble(1.0);
        err = std::max(err, (a.col(c) * rot - b.col(c)).cwiseAbs().maxCoeff());
    }
    return err;
}

double chordal_distance(const SteeringMatrix &a, const SteeringMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("chordal_distance: shape mismatch");
    const double overlap = (a.adjoint() * b).squaredNorm();
    return std::sqrt(std::max(0.0, static_cast<double>(a.cols()) - overlap));
}

std::vector<SteeringMatrix> requantize(std::span<const SteeringMatrix> v, AngleBits bits)
{
    std::vector<SteeringMatrix> out;
    out.reserve(v.size());
    for (const auto &m : v)
    {
        GivensAngles a = givens_decompose(m);
        for (auto &x : a.phi)
            x = phi_codeword(phi_quantize(x, bits.b_phi), bits.b_phi);
        for (auto &x : a.psi)
            x = psi_codeword(psi_quantize(x, bits.b_psi), bits.b_psi);
        out.push_back(reconstruct(a, static_cast<int>(m.rows()), static_cast<int>(m.cols())));
    }
    return out;
}

std::vector<SteeringMatrix> fed_back_steering(std::span<const CMatrix> h_tones, int n_ss, AngleBits bits)
{
    std::vector<SteeringMatrix> v;
    v.reserve(h_tones.size());
    for (const auto &h : h_tones)
        v.push_back(svd_v(h, n_ss));
    return requantize(v, bits);
}

void write_report_csv(std::ostream &os, const CompressedBeamformingReport &report)
{
    report.validate();
    os << "tone,angle,index,value,code\n";
    for (std::size_t t = 0; t < report.tones.size(); ++t)
    {
        const auto &g = report.tones[t];
        auto emit = [&](const char *kind, const std::vector<double> &vals, const std::vector<std::uint32_t> &codes)
        {
            for (std::size_t i = 0; i < vals.size(); ++i)
            {
                os << t << ',' << kind << ',' << i << ',' << format_double(vals[i]) << ',';
                if (!codes.empty())
                    os << codes[i];
                os << '\n';
            }
        };
        emit("phi", g.phi, g.phi_code);
        emit("psi", g.psi, g.psi_code);
    }
}

std::string report_to_json(const CompressedBeamformingReport &report)
{
    report.validate();
    nlohmann::ordered_json j;
    j["n_rows"] = report.n_rows;
    j["n_cols"] = report.n_cols;
    j["b_phi"] = report.b_phi;
    j["b_psi"] = report.b_psi;
    auto &tones = j["tones"] = nlohmann::ordered_json::array();
    for (const auto &t : report.tones)
        tones.push_back({{"phi", t.phi}, {"psi", t.psi}, {"phi_code", t.phi_code}, {"psi_code", t.psi_code}});
    return j.dump(2);
}

} // namespace axmu
