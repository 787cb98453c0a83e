// Copyright 2026 The Reupload Authors
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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "reupload/poly.hpp"
#include "reupload/trainer.hpp"
#include "reupload/verifiers.hpp"

namespace reupload {

using Json = nlohmann::json;

/// Malformed input file. line() is 1-based for JSON Lines input and 0 otherwise.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& what, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

/// Unreadable or unwritable path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One record per line: {"n", "matrix": [[[re, im], ...], ...], "label", "meta": {name: value}}.
void write_dataset(std::ostream& out, const Dataset& data);
/// Validates every record (shape, Hermitian, unit trace, PSD) and reports the offending line.
Dataset read_dataset(std::istream& in);
void save_dataset(const std::string& path, const Dataset& data);
Dataset load_dataset(const std::string& path);

Json model_to_json(const ReuploadModel& model);
ReuploadModel model_from_json(const Json& j);

Json polynomial_to_json(const PolynomialSpec& p);
PolynomialSpec polynomial_from_json(const Json& j);

Json train_config_to_json(const TrainConfig& c);
/// Missing keys keep their defaults.
TrainConfig train_config_from_json(const Json& j);

Json report_to_json(const TrainReport& r);
Json verification_to_json(const VerificationReport& r);

/// bin_low,bin_high,count_class0,count_class1
void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins);

Json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace reupload
