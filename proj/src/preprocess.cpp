//
// Copyright 2026 The dperm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dperm/preprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "dperm/errors.hpp"

namespace dperm {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line, std::int64_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"' && trim(field).empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
      field.clear();
    } else if (ch == ',') {
      fields.push_back(was_quoted ? field : trim(field));
      field.clear();
      was_quoted = false;
    } else {
      field += ch;
    }
  }
  if (quoted) {
    throw ParseError("line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(was_quoted ? field : trim(field));
  return fields;
}

double parse_double(const std::string& s, std::int64_t row, const std::string& column) {
  const std::string t = trim(s);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("row " + std::to_string(row) + ", column '" + column +
                     "': cannot parse '" + s + "' as a number");
  }
  return value;
}

std::int64_t target_index(const std::vector<ColumnSchema>& schema) {
  std::int64_t index = -1;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].kind == ColumnKind::kTarget) {
      if (index >= 0) {
        throw ConfigError("schema declares more than one target column");
      }
      index = static_cast<std::int64_t>(i);
    }
  }
  if (index < 0) {
    throw ConfigError("schema declares no target column");
  }
  return index;
}

}  // namespace

RawTable read_csv(std::istream& in) {
  RawTable table;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    auto fields = split_csv_line(line, line_no);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(table.header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) {
    throw ParseError("empty CSV: no header row");
  }
  return table;
}

RawTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  return read_csv(in);
}

std::vector<ColumnSchema> parse_schema(std::istream& in, const std::vector<std::string>& header) {
  std::string target;
  std::set<std::string> categorical;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("schema line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "target") {
      if (!target.empty()) {
        throw ConfigError("schema declares more than one target column");
      }
      target = value;
    } else if (key == "categorical") {
      std::string item;
      std::stringstream ss(value);
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
          categorical.insert(item);
        }
      }
    } else {
      throw ConfigError("schema line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (target.empty()) {
    throw ConfigError("schema declares no target column");
  }
  std::vector<ColumnSchema> schema;
  schema.reserve(header.size());
  bool target_seen = false;
  for (const auto& name : header) {
    ColumnSchema col;
    col.name = name;
    if (name == target) {
      col.kind = ColumnKind::kTarget;
      target_seen = true;
    } else if (categorical.count(name) > 0) {
      col.kind = ColumnKind::kCategorical;
      categorical.erase(name);
    } else {
      col.kind = ColumnKind::kNumeric;
    }
    schema.push_back(std::move(col));
  }
  if (!target_seen) {
    throw ConfigError("target column '" + target + "' is not in the CSV header");
  }
  if (!categorical.empty()) {
    throw ConfigError("categorical column '" + *categorical.begin() +
                      "' is not in the CSV header");
  }
  return schema;
}

std::vector<ColumnSchema> parse_schema_file(const std::string& path,
                                            const std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  return parse_schema(in, header);
}

std::vector<ColumnSchema> infer_categories(const RawTable& table,
                                           std::vector<ColumnSchema> schema) {
  if (schema.size() != table.header.size()) {
    throw DimensionMismatch("schema covers " + std::to_string(schema.size()) +
                            " columns, table has " + std::to_string(table.header.size()));
  }
  for (std::size_t j = 0; j < schema.size(); ++j) {
    if (schema[j].kind != ColumnKind::kCategorical || !schema[j].categories.empty()) {
      continue;
    }
    std::set<std::string> values;
    for (const auto& row : table.rows) {
      values.insert(row[j]);
    }
    schema[j].categories.assign(values.begin(), values.end());
  }
  return schema;
}

Matrix binarize(const RawTable& table, const std::vector<ColumnSchema>& schema) {
  if (schema.size() != table.header.size()) {
    throw DimensionMismatch("schema covers " + std::to_string(schema.size()) +
                            " columns, table has " + std::to_string(table.header.size()));
  }
  std::vector<std::size_t> numeric_cols;
  std::vector<std::size_t> categorical_cols;
  Eigen::Index width = 0;
  for (std::size_t j = 0; j < schema.size(); ++j) {
    switch (schema[j].kind) {
      case ColumnKind::kNumeric:
        numeric_cols.push_back(j);
        ++width;
        break;
      case ColumnKind::kCategorical:
        if (schema[j].categories.empty()) {
          throw ConfigError("categorical column '" + schema[j].name +
                            "' has an empty category list");
        }
        categorical_cols.push_back(j);
        width += static_cast<Eigen::Index>(schema[j].categories.size());
        break;
      case ColumnKind::kTarget:
        break;
    }
  }
  target_index(schema);  // Enforces exactly one target.
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(table.rows.size()), width);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    Eigen::Index k = 0;
    for (std::size_t j : numeric_cols) {
      out(static_cast<Eigen::Index>(i), k++) =
          parse_double(row[j], static_cast<std::int64_t>(i), schema[j].name);
    }
    for (std::size_t j : categorical_cols) {
      const auto& categories = schema[j].categories;
      const auto it = std::find(categories.begin(), categories.end(), row[j]);
      if (it == categories.end()) {
        throw UnknownCategory(schema[j].name, row[j]);
      }
      out(static_cast<Eigen::Index>(i), k + (it - categories.begin())) = 1.0;
      k += static_cast<Eigen::Index>(categories.size());
    }
  }
  return out;
}

Matrix scale_and_normalize(Matrix table) {
  for (Eigen::Index j = 0; j < table.cols(); ++j) {
    const double max_abs = table.col(j).cwiseAbs().maxCoeff();
    if (max_abs > 0.0) {
      table.col(j) /= max_abs;
    }
  }
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    const double norm = table.row(i).norm();
    if (norm > 1.0) {
      table.row(i) /= norm;
    }
  }
  return table;
}

std::pair<Vector, TargetMapping> map_target(const std::vector<std::string>& raw) {
  std::set<std::string> distinct(raw.begin(), raw.end());
  if (distinct.size() != 2) {
    std::string seen;
    for (const auto& v : distinct) {
      if (!seen.empty()) {
        seen += ", ";
      }
      seen += "'" + v + "'";
      if (seen.size() > 60) {
        seen += ", ...";
        break;
      }
    }
    throw NotBinaryTarget("target column must hold exactly two distinct values, found " +
                          std::to_string(distinct.size()) + (seen.empty() ? "" : ": " + seen));
  }
  TargetMapping mapping;
  mapping.negative = *distinct.begin();
  mapping.positive = *std::next(distinct.begin());
  Vector labels(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    labels(static_cast<Eigen::Index>(i)) = (raw[i] == mapping.negative) ? -1.0 : 1.0;
  }
  return {std::move(labels), std::move(mapping)};
}

Matrix append_constant_and_renormalize(Matrix features) {
  Matrix out(features.rows(), features.cols() + 1);
  out.leftCols(features.cols()) = features;
  out.col(features.cols()).setOnes();
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (norm > 1.0) {
      out.row(i) /= norm;
    }
  }
  return out;
}

std::pair<Matrix, Vector> sub_dataset(const Matrix& features, const Vector& labels,
                                      std::int64_t n1, int d1, RngStream rng) {
  if (features.rows() != labels.size()) {
    throw DimensionMismatch("features and labels disagree on the record count");
  }
  if (n1 < 1 || n1 > features.rows()) {
    throw InvalidArgument("n1 must lie in [1, " + std::to_string(features.rows()) + "], got " +
                          std::to_string(n1));
  }
  if (d1 < 1 || d1 > features.cols()) {
    throw InvalidArgument("d1 must lie in [1, " + std::to_string(features.cols()) + "], got " +
                          std::to_string(d1));
  }
  Sampler sampler(rng);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(features.rows()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = static_cast<Eigen::Index>(i);
  }
  // Fisher-Yates with the deterministic stream.
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(sampler.bounded(static_cast<std::int64_t>(i + 1)));
    std::swap(order[i], order[j]);
  }
  Matrix x(n1, d1);
  Vector y(n1);
  for (std::int64_t i = 0; i < n1; ++i) {
    x.row(i) = features.row(order[static_cast<std::size_t>(i)]).leftCols(d1);
    y(i) = labels(order[static_cast<std::size_t>(i)]);
  }
  return {std::move(x), std::move(y)};
}

PreprocessResult preprocess_table(const RawTable& table, const std::vector<ColumnSchema>& schema,
                                  const PipelineOptions& opts) {
  const std::int64_t target_col = target_index(schema);
  Matrix features = binarize(table, schema);
  std::vector<std::string> raw_target;
  raw_target.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    raw_target.push_back(row[static_cast<std::size_t>(target_col)]);
  }
  auto [labels, mapping] = map_target(raw_target);
  features = scale_and_normalize(std::move(features));
  if (opts.n1.has_value() || opts.d1.has_value()) {
    const std::int64_t n1 = opts.n1.value_or(features.rows());
    const int d1 = opts.d1.value_or(static_cast<int>(features.cols()));
    auto [sub_x, sub_y] = sub_dataset(features, labels, n1, d1, RngStream{opts.seed, 0});
    features = std::move(sub_x);
    labels = std::move(sub_y);
  }
  features = append_constant_and_renormalize(std::move(features));
  return {validate_dataset(Dataset(std::move(features), std::move(labels))), std::move(mapping)};
}

void write_processed_csv(const Dataset& data, std::ostream& out) {
  for (int j = 0; j < data.dim(); ++j) {
    out << 'f' << j << ',';
  }
  out << "label\n";
  char buffer[64];
  for (std::int64_t i = 0; i < data.n(); ++i) {
    for (int j = 0; j < data.dim(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", data.features()(i, j));
      out << buffer << ',';
    }
    out << (data.labels()(i) > 0 ? "1" : "-1") << '\n';
  }
}

void write_processed_csv_file(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    // The caller named the destination, so a bad path is a config problem,
    // unlike unreadable inputs.
    throw ConfigError("cannot open '" + path + "' for writing");
  }
  write_processed_csv(data, out);
  if (!out.good()) {
    throw ConfigError("failed writing '" + path + "'");
  }
}

Dataset read_processed_csv(std::istream& in) {
  const RawTable table = read_csv(in);
  const std::size_t width = table.header.size();
  if (width < 2 || table.header.back() != "label") {
    throw ParseError("processed CSV must end with a 'label' column");
  }
  for (std::size_t j = 0; j + 1 < width; ++j) {
    if (table.header[j] != "f" + std::to_string(j)) {
      throw ParseError("processed CSV header must run f0..f" + std::to_string(width - 2) +
                       ", found '" + table.header[j] + "'");
    }
  }
  Matrix features(static_cast<Eigen::Index>(table.rows.size()),
                  static_cast<Eigen::Index>(width - 1));
  Vector labels(static_cast<Eigen::Index>(table.rows.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j + 1 < width; ++j) {
      features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_double(table.rows[i][j], static_cast<std::int64_t>(i), table.header[j]);
    }
    const double label = parse_double(table.rows[i][width - 1], static_cast<std::int64_t>(i),
                                      "label");
    labels(static_cast<Eigen::Index>(i)) = label;
  }
  return validate_dataset(Dataset(std::move(features), std::move(labels)));
}

Dataset read_processed_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  return read_processed_csv(in);
}

}  // namespace dperm
