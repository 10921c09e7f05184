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

#include "qop/random.hpp"

#include <cmath>

namespace qop {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is exactly Haar.
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

PureState random_pure_state(std::size_t dim, Rng& rng) {
  return PureState::normalized(ginibre(dim, 1, rng).col(0));
}

RealVector random_distribution(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  RealVector p(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = expo(rng);
  return p / p.sum();
}

DensityMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank) {
  if (rank == 0 || rank > dim) rank = dim;
  RealVector spectrum = RealVector::Zero(static_cast<Eigen::Index>(dim));
  spectrum.head(static_cast<Eigen::Index>(rank)) = random_distribution(rank, rng);
  const ComplexMatrix u = haar_unitary(dim, rng);
  ComplexMatrix rho = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix h = ComplexMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    h(i, i) = normal(rng);
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      h(i, j) = Complex(re, im);
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

Channel random_channel(std::size_t d_in, std::size_t d_out, Rng& rng, std::size_t kraus_rank) {
  if (kraus_rank == 0) kraus_rank = d_in * d_out;
  if (d_out * kraus_rank < d_in || kraus_rank > d_in * d_out) {
    throw Error(ErrorCode::kInvalidArgument, "Kraus rank must lie in [ceil(d_in/d_out), d_in*d_out]");
  }
  // Orthonormalize d_in Gaussian columns in C^{d_out * rank}: Haar isometry.
  const ComplexMatrix g = ginibre(d_out * kraus_rank, d_in, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix full_q = qr.householderQ();
  ComplexMatrix v = full_q.leftCols(static_cast<Eigen::Index>(d_in));
  const auto d_out_i = static_cast<Eigen::Index>(d_out);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus_rank; ++k) {
    ops.emplace_back(v.middleRows(static_cast<Eigen::Index>(k) * d_out_i, d_out_i));
  }
  return Channel::from_kraus(KrausSet::create(d_in, d_out, std::move(ops)));
}

}  // namespace qop
