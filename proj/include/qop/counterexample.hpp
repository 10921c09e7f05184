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

#include <optional>
#include <string>
#include <vector>

#include "qop/channel.hpp"
#include "qop/core.hpp"
#include "qop/dilation.hpp"

namespace qop {

// The channel family that sends |i><i| -> |0'><0'| for i < d-1, sends
// |d-1><d-1| to a mixed state rho_target, and kills every off-diagonal
// input |i><j|. It cannot be induced by a unitary on initial (x) final with
// the final system prepared in any mixed state.
struct CounterexampleParams {
  std::size_t d;
  std::size_t d_fin;
  DensityMatrix rho_target;

  // Throws kInvalidArgument (d < 2, d_fin < 2, rho dimension),
  // kTargetNotMixed or kNoOverlap.
  void validate() const;
};

Channel build_counterexample(const CounterexampleParams& params);

// Joint unitary on initial (x) final (x) two-level environment with
//   |i>|0'>|0>   -> |i>|0'>|0>                          i < d-1
//   |d-1>|0'>|0> -> alpha |d-1>|0'>|0> + beta |d-1>|1'>|1>
// completed to a unitary; final and environment start in |0'>|0>.
Dilation implementing_unitary(std::size_t d, std::size_t d_fin, Complex alpha, Complex beta);

// rho_target produced by implementing_unitary: |alpha|^2 |0'><0'| + |beta|^2 |1'><1'|.
DensityMatrix implementing_unitary_target(std::size_t d_fin, Complex alpha, Complex beta);

enum class CertificateClaim { kNotRealizable, kInconclusive };

const char* to_string(CertificateClaim claim);

// Counting step for one rank r of the final system's initial state: r*(d-1)
// orthonormal vectors would have to fit in the d-dimensional initial space.
struct RankCount {
  std::size_t rank;
  std::size_t vectors_required;
  std::size_t dimension_available;
  bool excluded;  // vectors_required > dimension_available
};

struct NonRealizabilityCertificate {
  CertificateClaim claim = CertificateClaim::kInconclusive;
  std::size_t rank_tested = 2;
  std::size_t vectors_required = 0;
  std::size_t dimension_available = 0;
  bool decoherence_contradiction = false;
  bool d2_branch_used = false;
  std::vector<RankCount> rank_counts;  // r = 2 .. d_fin
  std::vector<std::string> narrative;
};

// Runs the impossibility argument for the family. Never throws on inputs
// outside the family; those yield kInconclusive with the failing check in the
// narrative.
NonRealizabilityCertificate certify_nonrealizable(const CounterexampleParams& params);

// Tests whether an arbitrary channel belongs to the family up to a change of
// basis of the final system (the common image of |0>..|d-2> becomes |0'>).
struct FamilyMatch {
  std::optional<CounterexampleParams> params;
  std::string reason;  // why membership failed, empty on success
};

FamilyMatch match_counterexample_family(const Channel& channel, double tol = 1e-8);

}  // namespace qop
