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

#include "qop/dilation.hpp"

#include <cmath>

#include "qop/random.hpp"

namespace qop {

Dilation Dilation::create(std::size_t d_in, std::size_t d_fin, std::size_t d_env,
                          ComplexMatrix unitary, DensityMatrix env_state, double unitarity_tol) {
  if (d_in == 0 || d_fin == 0) throw Error(ErrorCode::kShapeMismatch, "zero system dimension");
  const std::size_t env = d_env == 0 ? 1 : d_env;
  const std::size_t joint = d_in * d_fin * env;
  if (joint > kMaxJointDim) throw Error(ErrorCode::kDimensionOverflow);
  if (static_cast<std::size_t>(unitary.rows()) != joint ||
      static_cast<std::size_t>(unitary.cols()) != joint) {
    throw Error(ErrorCode::kShapeMismatch, "unitary side must be d_in*d_fin*max(d_env,1)");
  }
  if (env_state.dim() != d_fin * env) {
    throw Error(ErrorCode::kShapeMismatch, "environment state must have dimension d_fin*max(d_env,1)");
  }
  if (!is_unitary(unitary, unitarity_tol)) throw Error(ErrorCode::kNotUnitary);
  return Dilation(d_in, d_fin, d_env, std::move(unitary), std::move(env_state));
}

Channel channel_from_dilation(const Dilation& dilation) {
  const auto d_in = static_cast<Eigen::Index>(dilation.d_in());
  const auto d_fin = static_cast<Eigen::Index>(dilation.d_fin());
  const auto env = static_cast<Eigen::Index>(dilation.env_factor());
  const auto rest = d_fin * env;
  const HermitianEigen spectrum = eig_hermitian(dilation.env_state().matrix());
  const ComplexMatrix& u = dilation.unitary();

  // K_{m,e,k}[a,i] = sqrt(p_k) <m,a,e| U |i>|s_k>
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = 0; k < spectrum.values.size(); ++k) {
    const double p = spectrum.values(k);
    if (p <= kDefaultTolerances.spectral_cutoff) break;
    const ComplexVector& s = spectrum.vectors.col(k);
    ComplexMatrix images(u.rows(), d_in);  // column i: U (|i> (x) |s_k>)
    for (Eigen::Index i = 0; i < d_in; ++i) {
      images.col(i) = std::sqrt(p) * u.middleCols(i * rest, rest) * s;
    }
    for (Eigen::Index m = 0; m < d_in; ++m) {
      for (Eigen::Index e = 0; e < env; ++e) {
        ComplexMatrix op(d_fin, d_in);
        for (Eigen::Index a = 0; a < d_fin; ++a) {
          op.row(a) = images.row((m * d_fin + a) * env + e);
        }
        ops.push_back(std::move(op));
      }
    }
  }
  return Channel::from_kraus(
      KrausSet::create(dilation.d_in(), dilation.d_fin(), std::move(ops)));
}

ComplexMatrix complete_to_unitary(std::size_t n, const ComplexMatrix& columns,
                                  const std::vector<std::size_t>& positions,
                                  std::optional<std::uint64_t> seed) {
  const auto dim = static_cast<Eigen::Index>(n);
  if (columns.rows() != dim || static_cast<std::size_t>(columns.cols()) != positions.size()) {
    throw Error(ErrorCode::kShapeMismatch, "one position per column required");
  }
  const ComplexMatrix gram = columns.adjoint() * columns;
  if (columns.cols() > 0 &&
      (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() >
          kDefaultTolerances.unitarity) {
    throw Error(ErrorCode::kNotUnitary, "columns are not orthonormal");
  }
  std::vector<bool> taken(n, false);
  for (std::size_t p : positions) {
    if (p >= n || taken[p]) throw Error(ErrorCode::kBadSubsystemIndex, "column position");
    taken[p] = true;
  }

  ComplexMatrix basis(dim, dim);
  Eigen::Index filled = 0;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) basis.col(filled++) = columns.col(c);

  std::optional<Rng> rng;
  if (seed) rng.emplace(*seed);
  Eigen::Index candidate = 0;
  while (filled < dim) {
    ComplexVector v;
    if (rng) {
      v = ginibre(n, 1, *rng).col(0);
    } else {
      if (candidate >= dim) throw Error(ErrorCode::kInvalidArgument, "basis extension failed");
      v = ComplexVector::Unit(dim, candidate++);
    }
    const double start = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < filled; ++c) {
        v -= basis.col(c) * basis.col(c).dot(v);
      }
    }
    if (v.norm() > 1e-6 * start) basis.col(filled++) = v / v.norm();
  }

  ComplexMatrix u(dim, dim);
  Eigen::Index next_free = columns.cols();
  std::vector<Eigen::Index> fixed_at(n, -1);
  for (std::size_t c = 0; c < positions.size(); ++c) {
    fixed_at[positions[c]] = static_cast<Eigen::Index>(c);
  }
  for (std::size_t col = 0; col < n; ++col) {
    if (fixed_at[col] >= 0) {
      u.col(static_cast<Eigen::Index>(col)) = basis.col(fixed_at[col]);
    } else {
      u.col(static_cast<Eigen::Index>(col)) = basis.col(next_free++);
    }
  }
  return u;
}

Dilation stinespring_from_kraus(const KrausSet& kraus, std::optional<std::uint64_t> completion_seed) {
  const std::size_t d_in = kraus.d_in();
  const std::size_t d_out = kraus.d_out();
  const std::size_t r = kraus.size();
  const std::size_t n = d_in * d_out * r;
  if (n > kMaxJointDim) throw Error(ErrorCode::kDimensionOverflow);

  const auto ri = static_cast<Eigen::Index>(r);
  const auto d_out_i = static_cast<Eigen::Index>(d_out);
  ComplexMatrix columns = ComplexMatrix::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(d_in));
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < d_in; ++i) {
    // Input |i>|0'>|0>_env sits at joint index (i * d_out + 0) * r + 0.
    positions.push_back(i * d_out * r);
    for (Eigen::Index k = 0; k < ri; ++k) {
      for (Eigen::Index a = 0; a < d_out_i; ++a) {
        // Output |0>_initial |a>' |k>_env.
        columns(a * ri + k, static_cast<Eigen::Index>(i)) =
            kraus[static_cast<std::size_t>(k)](a, static_cast<Eigen::Index>(i));
      }
    }
  }
  ComplexMatrix u = complete_to_unitary(n, columns, positions, completion_seed);

  const auto env_dim = static_cast<Eigen::Index>(d_out * r);
  ComplexMatrix env = ComplexMatrix::Zero(env_dim, env_dim);
  env(0, 0) = 1.0;
  return Dilation::create(d_in, d_out, r, std::move(u), DensityMatrix(std::move(env)));
}

std::vector<SpectralComponent> decompose_mixed_env(const Dilation& dilation) {
  const HermitianEigen spectrum = eig_hermitian(dilation.env_state().matrix());
  std::vector<SpectralComponent> out;
  double total = 0.0;
  for (Eigen::Index k = 0; k < spectrum.values.size(); ++k) {
    if (spectrum.values(k) > kDefaultTolerances.spectral_cutoff) total += spectrum.values(k);
  }
  for (Eigen::Index k = 0; k < spectrum.values.size(); ++k) {
    const double p = spectrum.values(k);
    if (p <= kDefaultTolerances.spectral_cutoff) break;
    PureState e = PureState::normalized(spectrum.vectors.col(k));
    Dilation branch = Dilation::create(dilation.d_in(), dilation.d_fin(), dilation.d_env(),
                                       dilation.unitary(), DensityMatrix::from_pure(e));
    out.push_back(SpectralComponent{p / total, std::move(e), channel_from_dilation(branch)});
  }
  return out;
}

Channel mix(const std::vector<SpectralComponent>& components) {
  std::vector<Channel> channels;
  RealVector weights(static_cast<Eigen::Index>(components.size()));
  for (std::size_t k = 0; k < components.size(); ++k) {
    channels.push_back(components[k].channel);
    weights(static_cast<Eigen::Index>(k)) = components[k].weight;
  }
  return mix(channels, weights);
}

}  // namespace qop
