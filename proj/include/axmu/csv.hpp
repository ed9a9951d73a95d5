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

#ifndef AXMU_CSV_HPP
#define AXMU_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

namespace axmu
{

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// Minimal CSV table: header plus rows of pre-formatted cells. Cells never
// contain separators, so no quoting is performed.
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string str() const;
    void write(const std::string &path) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::string &path);

} // namespace axmu

#endif
