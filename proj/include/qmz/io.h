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

#ifndef QMZ_IO_H_
#define QMZ_IO_H_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qmz/fisher_c.h"
#include "qmz/mle.h"
#include "qmz/sampling.h"
#include "qmz/wigner.h"

namespace qmz::io {

inline constexpr const char* kToolName = "qmz";
inline constexpr const char* kToolVersion = "1.0.0";

// Ordered key/value pairs written ahead of every payload. In CSV each pair
// becomes a "# key = value" line after a "# qmz <version>" banner.
using Metadata = std::vector<std::pair<std::string, std::string>>;

// 17 significant digits (round-trips any double); +inf prints as "inf".
std::string format_double(double x);

enum class Format { kCsv, kJson };
Format parse_format(const std::string& name);

void write_reports(std::ostream& out, Format format, const Metadata& meta,
                   SweepAxis axis, const std::vector<FisherReport>& rows);

void write_samples(std::ostream& out, Format format, const Metadata& meta,
                   const SampleSet& samples);

void write_wigner(std::ostream& out, Format format, const Metadata& meta,
                  const WignerGrid& grid);

// Small numeric table, used for the qfi and mle-campaign summaries. Infinite
// entries follow the same rules as delta_phi.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
void write_table(std::ostream& out, Format format, const Metadata& meta,
                 const Table& table);

}  // namespace qmz::io

#endif  // QMZ_IO_H_
