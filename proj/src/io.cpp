// Copyright 2026 The qmz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmz/io.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <variant>

#include "json.hpp"

namespace qmz::io {

namespace {

using Json = nlohmann::ordered_json;

Json JsonNumber(double x) {
  if (std::isfinite(x)) return x;
  return Json{{"special", format_double(x)}};
}

Json MetaObject(const Metadata& meta) {
  Json j = Json::object();
  j["tool"] = std::string(kToolName) + " " + kToolVersion;
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

void WriteCsvMeta(std::ostream& out, const Metadata& meta) {
  out << "# " << kToolName << ' ' << kToolVersion << '\n';
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << '\n';
}

void WriteJson(std::ostream& out, const Json& j) { out << j.dump(1) << '\n'; }

void CheckStream(const std::ostream& out) {
  if (!out) throw std::ios_base::failure("write failed");
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw std::invalid_argument("unknown output format '" + name +
                              "' (expected csv or json)");
}

void write_reports(std::ostream& out, Format format, const Metadata& meta,
                   SweepAxis axis, const std::vector<FisherReport>& rows) {
  const std::string x_name = sweep_axis_name(axis);
  if (format == Format::kCsv) {
    WriteCsvMeta(out, meta);
    out << "scheme," << x_name << ",cfi,qfi,delta_phi,delta_phi_min,delta_phi_sql\n";
    for (const auto& r : rows) {
      out << sweep_scheme_name(r.scheme) << ',' << format_double(r.x) << ','
          << format_double(r.cfi) << ',' << format_double(r.qfi) << ','
          << (r.delta_phi_infinite() ? "inf" : format_double(r.delta_phi)) << ','
          << format_double(r.delta_phi_min) << ',' << format_double(r.delta_phi_sql)
          << '\n';
    }
  } else {
    Json j;
    j["meta"] = MetaObject(meta);
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["scheme"] = sweep_scheme_name(r.scheme);
      row[x_name] = r.x;
      row["cfi"] = r.cfi;
      row["qfi"] = r.qfi;
      row["delta_phi"] = r.delta_phi_infinite()
                             ? JsonNumber(std::numeric_limits<double>::infinity())
                             : JsonNumber(r.delta_phi);
      row["delta_phi_min"] = JsonNumber(r.delta_phi_min);
      row["delta_phi_sql"] = JsonNumber(r.delta_phi_sql);
      arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    WriteJson(out, j);
  }
  CheckStream(out);
}

namespace {

template <typename Sample>
bool HasQubit(const std::vector<Sample>& v) {
  return !v.empty() && v.front().qubit_x.has_value();
}

void CsvRow(std::ostream& out, const HomodyneSample& s, bool qubit) {
  out << format_double(s.x_plus) << ',' << format_double(s.x_minus);
  if (qubit) out << ',' << s.qubit_x.value_or(0);
  out << '\n';
}

void CsvRow(std::ostream& out, const CountSample& s, bool qubit) {
  out << s.m << ',' << s.n;
  if (qubit) out << ',' << s.qubit_x.value_or(0);
  out << '\n';
}

Json JsonRow(const HomodyneSample& s, bool qubit) {
  Json row;
  row["x_plus"] = s.x_plus;
  row["x_minus"] = s.x_minus;
  if (qubit) row["qubit_x"] = s.qubit_x.value_or(0);
  return row;
}

Json JsonRow(const CountSample& s, bool qubit) {
  Json row;
  row["m"] = s.m;
  row["n"] = s.n;
  if (qubit) row["qubit_x"] = s.qubit_x.value_or(0);
  return row;
}

}  // namespace

void write_samples(std::ostream& out, Format format, const Metadata& meta,
                   const SampleSet& samples) {
  std::visit(
      [&](const auto& v) {
        using Sample = typename std::decay_t<decltype(v)>::value_type;
        const bool qubit = HasQubit(v);
        if (format == Format::kCsv) {
          WriteCsvMeta(out, meta);
          if constexpr (std::is_same_v<Sample, HomodyneSample>) {
            out << "x_plus,x_minus";
          } else {
            out << "m,n";
          }
          out << (qubit ? ",qubit_x\n" : "\n");
          for (const auto& s : v) CsvRow(out, s, qubit);
        } else {
          Json j;
          j["meta"] = MetaObject(meta);
          Json arr = Json::array();
          for (const auto& s : v) arr.push_back(JsonRow(s, qubit));
          j["rows"] = std::move(arr);
          WriteJson(out, j);
        }
      },
      samples);
  CheckStream(out);
}

void write_wigner(std::ostream& out, Format format, const Metadata& meta,
                  const WignerGrid& grid) {
  if (format == Format::kCsv) {
    WriteCsvMeta(out, meta);
    out << "x,p,W\n";
    for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix) {
      for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) {
        out << format_double(grid.x_axis[ix]) << ',' << format_double(grid.p_axis[ip])
            << ',' << format_double(grid.at(ix, ip)) << '\n';
      }
    }
  } else {
    // rows[ix][ip] = W(x_axis[ix], p_axis[ip]).
    Json j;
    j["meta"] = MetaObject(meta);
    j["x_axis"] = grid.x_axis;
    j["p_axis"] = grid.p_axis;
    Json rows = Json::array();
    for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix) {
      Json row = Json::array();
      for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) row.push_back(grid.at(ix, ip));
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    WriteJson(out, j);
  }
  CheckStream(out);
}

void write_table(std::ostream& out, Format format, const Metadata& meta,
                 const Table& table) {
  if (format == Format::kCsv) {
    WriteCsvMeta(out, meta);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << format_double(row[c]);
      }
      out << '\n';
    }
  } else {
    Json j;
    j["meta"] = MetaObject(meta);
    Json arr = Json::array();
    for (const auto& row : table.rows) {
      Json obj;
      for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
        obj[table.columns[c]] = JsonNumber(row[c]);
      }
      arr.push_back(std::move(obj));
    }
    j["rows"] = std::move(arr);
    WriteJson(out, j);
  }
  CheckStream(out);
}

}  // namespace qmz::io
