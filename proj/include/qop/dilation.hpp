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

#include <cstdint>
#include <optional>
#include <vector>

#include "qop/channel.hpp"
#include "qop/core.hpp"

namespace qop {

// Joint unitary on [initial (d_in), final (d_fin), auxiliary environment
// (d_env)] together with the initial state of the non-initial factors.
// d_env == 0 means there is no auxiliary environment. The induced channel is
//   rho -> tr_{initial, env}[ U (rho (x) env_state) U^dagger ].
class Dilation {
 public:
  static Dilation create(std::size_t d_in, std::size_t d_fin, std::size_t d_env, ComplexMatrix unitary,
                         DensityMatrix env_state,
                         double unitarity_tol = kDefaultTolerances.unitarity);

  std::size_t d_in() const { return d_in_; }
  std::size_t d_fin() const { return d_fin_; }
  std::size_t d_env() const { return d_env_; }
  // Dimension of the auxiliary factor actually present in the joint space.
  std::size_t env_factor() const { return d_env_ == 0 ? 1 : d_env_; }
  std::size_t joint_dim() const { return d_in_ * d_fin_ * env_factor(); }
  const ComplexMatrix& unitary() const { return unitary_; }
  const DensityMatrix& env_state() const { return env_state_; }

 private:
  Dilation(std::size_t d_in, std::size_t d_fin, std::size_t d_env, ComplexMatrix unitary,
           DensityMatrix env_state)
      : d_in_(d_in), d_fin_(d_fin), d_env_(d_env), unitary_(std::move(unitary)),
        env_state_(std::move(env_state)) {}

  std::size_t d_in_;
  std::size_t d_fin_;
  std::size_t d_env_;
  ComplexMatrix unitary_;
  DensityMatrix env_state_;
};

Channel channel_from_dilation(const Dilation& dilation);

// Extends the orthonormal `columns` (placed at `positions`) to an n x n
// unitary. Remaining columns come from Gram-Schmidt over the standard basis,
// or over Gaussian vectors drawn from `seed` when one is given.
ComplexMatrix complete_to_unitary(std::size_t n, const ComplexMatrix& columns,
                                  const std::vector<std::size_t>& positions,
                                  std::optional<std::uint64_t> seed = std::nullopt);

// Pure-environment dilation: |i>|0'>|0>_env -> |0> (x) sum_k E_k|i> (x) |k>_env,
// completed to a unitary. d_env equals the number of Kraus operators.
Dilation stinespring_from_kraus(const KrausSet& kraus,
                                std::optional<std::uint64_t> completion_seed = std::nullopt);

struct SpectralComponent {
  double weight;
  PureState env_basis_state;
  Channel channel;
};

// One pure-environment component per eigenvalue of env_state above the
// spectral cutoff; the weighted mix of the components is the channel.
std::vector<SpectralComponent> decompose_mixed_env(const Dilation& dilation);

Channel mix(const std::vector<SpectralComponent>& components);

}  // namespace qop
