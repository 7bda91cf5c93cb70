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

#ifndef DPERM_PREPROCESS_HPP_
#define DPERM_PREPROCESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dperm/core_types.hpp"
#include "dperm/rng.hpp"

namespace dperm {

enum class ColumnKind { kNumeric, kCategorical, kTarget };

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  // Allowed raw values for a categorical column, in indicator-block order.
  // Filled either by the schema author or by infer_categories.
  std::vector<std::string> categories;
};

// A CSV file as raw strings: one header row plus data rows, every row the
// same width.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Minimal CSV reader: comma separation, double-quote quoting with "" escape,
// surrounding whitespace trimmed from unquoted fields. Raises ParseError
// (with the line number) on ragged rows or unterminated quotes.
RawTable read_csv(std::istream& in);
RawTable read_csv_file(const std::string& path);

// Schema config: key=value lines, `target = <column>` naming exactly one
// column and `categorical = a, b, c` listing the categorical ones; all other
// header columns are numeric. Raises ConfigError on unknown column names or
// a missing/duplicated target.
std::vector<ColumnSchema> parse_schema(std::istream& in, const std::vector<std::string>& header);
std::vector<ColumnSchema> parse_schema_file(const std::string& path,
                                            const std::vector<std::string>& header);

// Fills empty category lists with the sorted distinct values observed in the
// table, so a data-derived schema accepts exactly what the data contains.
std::vector<ColumnSchema> infer_categories(const RawTable& table,
                                           std::vector<ColumnSchema> schema);

// Expands the table to a numeric matrix: numeric columns first in schema
// order, then one indicator block per categorical column in schema order
// (one 0/1 column per category). The target column is excluded. Raises
// UnknownCategory for a value missing from its category list and ParseError
// for an unparseable numeric cell.
Matrix binarize(const RawTable& table, const std::vector<ColumnSchema>& schema);

// Divides every column by its maximum absolute value (all-zero columns pass
// through), then divides every row with L2 norm above 1 by its own norm.
// A second application is a no-op exactly when every nonzero column keeps a
// unit-magnitude entry after the row step; a column whose maximal rows all
// shrink gets rescaled by a repeat pass.
Matrix scale_and_normalize(Matrix table);

// How raw target values were folded onto {-1, +1}.
struct TargetMapping {
  std::string negative;  // lexicographically smaller raw value -> -1
  std::string positive;
};

// Maps the two distinct raw target values to -1/+1 by lexicographic order.
// Raises NotBinaryTarget unless exactly two distinct values occur.
std::pair<Vector, TargetMapping> map_target(const std::vector<std::string>& raw);

// Appends a constant-1 feature and renormalizes each row back into the unit
// ball. Any nonzero row has post-append norm above 1 and is divided by it;
// an all-zero row becomes (0, ..., 0, 1) and stays.
Matrix append_constant_and_renormalize(Matrix features);

// Harness utility: permutes records with the given stream, then keeps the
// first n1 rows and first d1 feature columns. Applied before the constant
// column is appended.
std::pair<Matrix, Vector> sub_dataset(const Matrix& features, const Vector& labels,
                                      std::int64_t n1, int d1, RngStream rng);

// Everything between a raw table and a trainable dataset, in order:
// binarize, map the target, scale and normalize, optional sub-dataset
// extraction, constant append, validation.
struct PipelineOptions {
  std::optional<std::int64_t> n1;
  std::optional<int> d1;
  std::uint64_t seed = 0;  // used only when n1/d1 request extraction
};

struct PreprocessResult {
  Dataset data;
  TargetMapping target;
};

PreprocessResult preprocess_table(const RawTable& table, const std::vector<ColumnSchema>& schema,
                                  const PipelineOptions& opts = {});

// Processed-dataset cache format: header f0,...,f{d},label; features printed
// with 17 significant digits so a round-trip reproduces bit-identical
// values; labels as -1/1. Readers validate on ingestion.
void write_processed_csv(const Dataset& data, std::ostream& out);
void write_processed_csv_file(const Dataset& data, const std::string& path);
Dataset read_processed_csv(std::istream& in);
Dataset read_processed_csv_file(const std::string& path);

}  // namespace dperm

#endif  // DPERM_PREPROCESS_HPP_
