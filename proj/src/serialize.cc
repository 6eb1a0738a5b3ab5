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

#include "dpsc/serialize.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace dpsc {
namespace {

using nlohmann::json;

json MatrixToJson(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index t = 0; t < m.cols(); ++t) row.push_back(m(i, t));
    rows.push_back(std::move(row));
  }
  return rows;
}

json VectorToJson(const Vector& v) {
  json out = json::array();
  for (Eigen::Index t = 0; t < v.size(); ++t) out.push_back(v(t));
  return out;
}

Matrix MatrixFromJson(const json& doc, Eigen::Index rows, Eigen::Index cols,
                      const char* field) {
  if (!doc.is_array() || static_cast<Eigen::Index>(doc.size()) != rows) {
    throw std::invalid_argument(std::string("field '") + field +
                                "' must be an array of n rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = doc[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument(std::string("field '") + field +
                                  "' rows must have T entries");
    }
    for (Eigen::Index t = 0; t < cols; ++t) m(i, t) = row[t].get<double>();
  }
  return m;
}

Vector VectorFromJson(const json& doc, Eigen::Index size, const char* field) {
  if (!doc.is_array() || static_cast<Eigen::Index>(doc.size()) != size) {
    throw std::invalid_argument(std::string("field '") + field +
                                "' must be an array of T entries");
  }
  Vector v(size);
  for (Eigen::Index t = 0; t < size; ++t) v(t) = doc[t].get<double>();
  return v;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

double ParseDouble(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("malformed number in CSV: '" + text + "'");
  }
  return value;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

json ToJson(const Dataset& dataset) {
  const DonorPanel& panel = dataset.panel;
  json doc;
  doc["n"] = panel.num_donors();
  doc["T"] = panel.num_periods();
  doc["t0"] = panel.t0();
  doc["values"] = MatrixToJson(panel.values());
  if (dataset.target) doc["target"] = VectorToJson(dataset.target->values());
  if (panel.truth()) {
    json truth;
    truth["M"] = MatrixToJson(panel.truth()->signal);
    truth["Z"] = MatrixToJson(panel.truth()->noise);
    if (dataset.target && dataset.target->truth()) {
      truth["m"] = VectorToJson(dataset.target->truth()->signal);
      truth["z"] = VectorToJson(dataset.target->truth()->noise);
    }
    doc["truth"] = std::move(truth);
  }
  if (!dataset.generator.is_null()) doc["generator"] = dataset.generator;
  return doc;
}

Dataset DatasetFromJson(const json& doc) {
  try {
    const auto n = doc.at("n").get<Eigen::Index>();
    const auto periods = doc.at("T").get<Eigen::Index>();
    const int t0 = doc.at("t0").get<int>();
    if (n < 1 || periods < 2) {
      throw std::invalid_argument("dataset needs n >= 1 and T >= 2");
    }
    Matrix values = MatrixFromJson(doc.at("values"), n, periods, "values");

    std::optional<PanelTruth> panel_truth;
    std::optional<SeriesTruth> series_truth;
    if (doc.contains("truth")) {
      const json& truth = doc["truth"];
      panel_truth = PanelTruth{MatrixFromJson(truth.at("M"), n, periods, "M"),
                               MatrixFromJson(truth.at("Z"), n, periods, "Z")};
      if (truth.contains("m")) {
        series_truth = SeriesTruth{VectorFromJson(truth["m"], periods, "m"),
                                   VectorFromJson(truth.at("z"), periods, "z")};
      }
    }

    std::optional<TargetSeries> target;
    if (doc.contains("target")) {
      target.emplace(VectorFromJson(doc["target"], periods, "target"), t0,
                     std::move(series_truth));
    }
    return Dataset{DonorPanel(std::move(values), t0, std::move(panel_truth)),
                   std::move(target),
                   doc.contains("generator") ? doc["generator"] : json()};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed dataset JSON: ") +
                                e.what());
  }
}

void WritePanelCsv(std::ostream& out, const Dataset& dataset) {
  const Matrix& x = dataset.panel.values();
  out << "donor_id";
  for (Eigen::Index t = 0; t < x.cols(); ++t) out << ",t" << (t + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    out << (i + 1);
    for (Eigen::Index t = 0; t < x.cols(); ++t) {
      out << ',' << FormatDouble(x(i, t));
    }
    out << '\n';
  }
  if (dataset.target) {
    out << "target";
    const Vector& y = dataset.target->values();
    for (Eigen::Index t = 0; t < y.size(); ++t) {
      out << ',' << FormatDouble(y(t));
    }
    out << '\n';
  }
}

Dataset ReadPanelCsv(std::istream& in, int t0) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  const std::vector<std::string> header = SplitCsvLine(line);
  if (header.size() < 3 || header[0] != "donor_id") {
    throw std::invalid_argument("CSV header must be donor_id,t1,...,tT");
  }
  const std::size_t periods = header.size() - 1;
  for (std::size_t t = 1; t <= periods; ++t) {
    if (header[t] != "t" + std::to_string(t)) {
      throw std::invalid_argument("CSV header column " + std::to_string(t) +
                                  " must be t" + std::to_string(t));
    }
  }

  std::vector<std::vector<double>> rows;
  std::optional<Vector> target;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != periods + 1) {
      throw std::invalid_argument("CSV row '" + cells.front() + "' has " +
                                  std::to_string(cells.size() - 1) +
                                  " values, expected " +
                                  std::to_string(periods));
    }
    std::vector<double> values(periods);
    for (std::size_t t = 0; t < periods; ++t) {
      values[t] = ParseDouble(cells[t + 1]);
    }
    if (cells[0] == "target") {
      target = Eigen::Map<Vector>(values.data(), periods);
    } else {
      rows.push_back(std::move(values));
    }
  }
  if (rows.empty()) throw std::invalid_argument("CSV has no donor rows");

  Matrix x(rows.size(), periods);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t t = 0; t < periods; ++t) x(i, t) = rows[i][t];
  }
  Dataset dataset{DonorPanel(std::move(x), t0), std::nullopt, nullptr};
  if (target) dataset.target.emplace(std::move(*target), t0);
  return dataset;
}

namespace {

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void SaveDataset(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  if (EndsWith(path, ".csv")) {
    WritePanelCsv(out, dataset);
  } else {
    out << ToJson(dataset).dump(1) << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

Dataset LoadDataset(const std::string& path, std::optional<int> csv_t0) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  if (EndsWith(path, ".csv")) {
    if (!csv_t0) {
      throw std::invalid_argument("reading a CSV panel requires t0");
    }
    return ReadPanelCsv(in, *csv_t0);
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " +
                                e.what());
  }
  return DatasetFromJson(doc);
}

}  // namespace dpsc
