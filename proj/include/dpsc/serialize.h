// Copyright 2026 The DPSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dataset file formats.
//
// JSON (round-trips bit-exactly):
//   {"n": n, "T": T, "t0": t0, "values": [[...n rows of T...]],
//    "target": [...T...],                      // optional
//    "truth": {"M": [[...]], "Z": [[...]], "m": [...], "z": [...]},  // opt.
//    "generator": {...}}                       // optional, free-form
//
// CSV: header "donor_id,t1,...,tT", one donor per row with ids 1..n, and an
// optional final row whose id is "target". Values use 17 significant digits.
// The split index is not stored in CSV and must be supplied when reading.

#ifndef DPSC_SERIALIZE_H_
#define DPSC_SERIALIZE_H_

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "dpsc/model.h"
#include "json.hpp"

namespace dpsc {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dataset {
  DonorPanel panel;
  std::optional<TargetSeries> target;
  nlohmann::json generator;  // null when absent
};

nlohmann::json ToJson(const Dataset& dataset);
// Throws std::invalid_argument on schema or invariant violations.
Dataset DatasetFromJson(const nlohmann::json& doc);

void WritePanelCsv(std::ostream& out, const Dataset& dataset);
Dataset ReadPanelCsv(std::istream& in, int t0);

// Formats with 17 significant digits, the precision used in every CSV.
std::string FormatDouble(double value);

// File helpers; failures to open, read or write raise IoError. The format is
// chosen by extension: ".csv" for CSV, anything else for JSON.
void SaveDataset(const std::string& path, const Dataset& dataset);
Dataset LoadDataset(const std::string& path, std::optional<int> csv_t0 = {});

}  // namespace dpsc

#endif  // DPSC_SERIALIZE_H_
