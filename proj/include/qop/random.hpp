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
#include <random>

#include "qop/channel.hpp"
#include "qop/core.hpp"

namespace qop {

using Rng = std::mt19937_64;

// Independent stream seed for (base, stream); splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);
PureState random_pure_state(std::size_t dim, Rng& rng);
// Uniform on the probability simplex.
RealVector random_distribution(std::size_t n, Rng& rng);
// Haar eigenbasis with a random spectrum of the given rank (0 = full rank).
DensityMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank = 0);
// Hermitian matrix with i.i.d. Gaussian parameters (the generator chart of
// the unitary search).
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);

// Channel with Kraus operators cut from a Haar-random isometry
// C^{d_in} -> C^{d_out} (x) C^{rank}; rank 0 means d_in * d_out. Ranks
// outside [ceil(d_in / d_out), d_in * d_out] throw kInvalidArgument.
Channel random_channel(std::size_t d_in, std::size_t d_out, Rng& rng, std::size_t kraus_rank = 0);

}  // namespace qop
