// Copyright 2026 The qop Authors
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

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qop/channel.hpp"
#include "qop/counterexample.hpp"
#include "qop/dilation.hpp"
#include "qop/realizability.hpp"

namespace qop::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Malformed or schema-violating input text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Representation { kKraus, kChoi };

// 17 significant digits, always with a decimal point or exponent; round-trips
// every finite double.
std::string format_double(double x);

// Pretty printer that keeps numeric rows on one line and writes floats with
// format_double.
std::string dump(const Json& value);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// ChannelFile:
//   {"format_version": 1, "d_in": d, "d_out": d',
//    "kraus": [ [[ [re, im], ... ], ...], ... ]}
// or, for the Choi form, "choi": [[ [re, im], ... ], ...] in place of "kraus".
// Matrices are lists of rows.
Json channel_to_json(const Channel& ch, Representation rep = Representation::kKraus);
// Validates trace preservation (and positivity for Choi input) within 1e-8.
Channel channel_from_json(const Json& j);

std::string write_channel(const Channel& ch, Representation rep = Representation::kKraus);
Channel read_channel(const std::string& text);

// StateFile: {"format_version": 1, "dim": n, "matrix": [...]}.
Json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const Json& j);

// DilationFile: {"format_version": 1, "d_in", "d_fin", "d_env", "unitary",
// "env_state"}; d_env = 0 means no auxiliary environment.
Json dilation_to_json(const Dilation& dil);
Dilation dilation_from_json(const Json& j);

Json to_json(const NonRealizabilityCertificate& cert);
Json to_json(const SearchResult& result);
Json to_json(const PerturbationReport& report);
Json to_json(const SearchConfig& cfg);

Json parse(const std::string& text);
std::string read_file(const std::string& path);
// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace qop::io
