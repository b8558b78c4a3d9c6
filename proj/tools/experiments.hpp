// Copyright 2026 The qshutter developers
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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qshutter/protocols.hpp"

namespace qshutter::experiments {

inline constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

enum class Experiment {
  kInterrogate,
  kShutterEvolve,
  kShutterConverge,
  kMemoryRoundtrip,
  kCnot,
};

Experiment experiment_from_name(const std::string& name);
std::string experiment_name(Experiment e);

enum class Format { kJson, kCsv };

/// Validated, typed experiment parameters. Unset optionals fall back to
/// per-experiment defaults during run().
struct ExperimentConfig {
  Experiment experiment = Experiment::kInterrogate;
  /// Radians, or the symbolic spellings "pi/(2N)" and "pi/(N+1)" (resolved
  /// against cycles), or "pi/<k>".
  std::string theta_spec;
  std::optional<int> cycles;
  std::optional<bool> bomb;      // interrogate
  std::optional<bool> particle;  // shutter-evolve
  std::string input_label = "H1";
  std::optional<cx> alpha;  // memory-roundtrip fixed input (else random)
  std::optional<cx> beta;
  std::uint64_t seed = 1;
  int trials = 100;
  std::string out_path;  // empty: caller prints
  Format format = Format::kJson;
};

struct ResultRecord {
  std::string experiment;
  nlohmann::json parameters;
  /// Deterministic numeric payload: identical config + seed must serialize
  /// byte-identically.
  nlohmann::json outputs;
  std::string version = kToolVersion;
  double duration_ms = 0.0;
};

nlohmann::json record_json(const ResultRecord& record);
/// Flat "key,value" rows; doubles printed with 17 significant digits.
std::string record_csv(const ResultRecord& record);

/// Parses the numeric rows of a key,value record_csv document back into
/// (key, value) pairs; used to verify lossless round-trips. On multi-column
/// tables it reads the last cell of each row.
std::vector<std::pair<std::string, double>> parse_csv_numbers(
    const std::string& csv);

/// Resolves a theta spelling. Symbolic forms require cycles.
double resolve_theta(const std::string& spec, std::optional<int> cycles);

/// "1,3,9", "1..100", "3..201:2" (inclusive ranges with optional stride).
std::vector<double> parse_values_list(const std::string& spec);

/// Dispatches to the matching device/protocol simulation. Deterministic
/// given config.seed. Writes the record to config.out_path when set.
ResultRecord run(const ExperimentConfig& config);

/// One record per value of the varied parameter ("cycles", "theta",
/// "trials" or "seed"), in input order.
std::vector<ResultRecord> sweep(const ExperimentConfig& config,
                                const std::string& vary,
                                const std::vector<double>& values);

/// Plot-ready table: one row per swept value, one column per scalar output.
std::string sweep_csv(const std::vector<ResultRecord>& records,
                      const std::string& vary);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace qshutter::experiments
