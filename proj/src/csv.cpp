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

#include "axmu/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace axmu
{

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return {buf.data(), res.ptr};
}

void CsvTable::add_row(std::vector<std::string> row)
{
    if (row.size() != header.size())
        throw std::invalid_argument("CsvTable: row width does not match header");
    rows.push_back(std::move(row));
}

std::string CsvTable::str() const
{
    std::string out;
    auto line = [&](const std::vector<std::string> &cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            if (i)
                out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header);
    for (const auto &r : rows)
        line(r);
    return out;
}

void CsvTable::write(const std::string &path) const
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    os << str();
    if (!os)
        throw std::runtime_error("write failed: " + path);
}

CsvTable parse_csv(std::string_view text)
{
    CsvTable t;
    bool first = true;
    while (!text.empty())
    {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;

        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true)
        {
            const auto comma = line.find(',', start);
            cells.emplace_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (first)
        {
            t.header = std::move(cells);
            first = false;
        }
        else
            t.add_row(std::move(cells));
    }
    return t;
}

CsvTable read_csv(const std::string &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_csv(ss.str());
}

} // namespace axmu
