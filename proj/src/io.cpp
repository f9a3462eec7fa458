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

#include "hlsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace hlsim {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

namespace {

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) {
    return format_double(std::get<double>(cell));
  }
  return csv_escape(std::get<std::string>(cell));
}

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j) os << ',';
    os << csv_escape(table.columns[j]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw ContractViolationError("row width does not match header");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ',';
      os << cell_text(row[j]);
    }
    os << '\n';
  }
}

void write_json(const Table& table, const Meta& meta, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["meta"] = {{"version", meta.version},
                 {"config_hash", meta.config_hash},
                 {"timestamp", meta.timestamp}};
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw ContractViolationError("row width does not match header");
    }
    nlohmann::ordered_json obj;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (std::holds_alternative<double>(row[j])) {
        obj[table.columns[j]] = std::get<double>(row[j]);
      } else {
        obj[table.columns[j]] = std::get<std::string>(row[j]);
      }
    }
    doc["rows"].push_back(std::move(obj));
  }
  os << doc.dump(2) << '\n';
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(const std::string& text) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  return std::string(buf);
}

std::string iso_timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  char buf[40];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return std::string(buf);
}

namespace {

double parse_number(const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ValidationError("malformed number in grid: '" + text + "'");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) {
    throw ValidationError("malformed number in grid: '" + text + "'");
  }
  if (!std::isfinite(v)) throw ValidationError("grid values must be finite");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  if (text.empty()) throw ValidationError("empty grid");
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() != 3) {
      throw ValidationError("range grid must be start:stop:step");
    }
    double start = parse_number(parts[0]);
    double stop = parse_number(parts[1]);
    double step = parse_number(parts[2]);
    if (step == 0.0) throw ValidationError("grid step must be nonzero");
    if ((stop - start) * step < 0.0) {
      throw ValidationError("grid step direction does not reach stop");
    }
    std::vector<double> values;
    double tol = 0.5 * std::fabs(step);
    for (long i = 0;; ++i) {
      double x = start + static_cast<double>(i) * step;
      if (step > 0.0 ? (x > stop + tol) : (x < stop - tol)) break;
      values.push_back(x);
      if (values.size() > 2000000) {
        throw ValidationError("grid has too many points");
      }
    }
    if (values.empty()) throw ValidationError("empty grid");
    return values;
  }
  std::vector<double> values;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw ValidationError("empty grid entry");
    values.push_back(parse_number(part));
  }
  return values;
}

std::vector<int> parse_dims(const std::string& text) {
  if (text.empty()) throw ValidationError("empty dimension list");
  std::vector<int> dims;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw ValidationError("empty dimension entry");
    double v = parse_number(part);
    int d = static_cast<int>(v);
    if (static_cast<double>(d) != v) {
      throw ValidationError("dimension must be an integer: '" + part + "'");
    }
    dims.push_back(d);
  }
  return dims;
}

}  // namespace hlsim
