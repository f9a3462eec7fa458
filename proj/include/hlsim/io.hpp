// Copyright 2026 The hlsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hlsim/common.hpp"

namespace hlsim {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits: enough for bit-exact double round trips.
std::string format_double(double v);

std::string csv_escape(const std::string& field);

void write_csv(const Table& table, std::ostream& os);

struct Meta {
  std::string version;
  std::string config_hash;
  std::string timestamp;  // never part of the hash
};

void write_json(const Table& table, const Meta& meta, std::ostream& os);

std::uint64_t fnv1a64(const std::string& text);
std::string hash_hex(const std::string& text);

std::string iso_timestamp_utc();

/// Grid syntax: "start:stop:step" (endpoints included within half a step) or
/// a comma-separated list of values.
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_dims(const std::string& text);

int run_cli(int argc, char** argv);

}  // namespace hlsim
