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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qop {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical slack for every validation in the library. The defaults are the
// values all modules use; callers that read external data may loosen them.
struct Tolerances {
  double hermiticity = 1e-12;       // DensityMatrix, entrywise
  double psd = 1e-10;               // smallest admissible eigenvalue is -psd
  double trace = 1e-12;             // DensityMatrix unit trace
  double state_norm = 1e-12;        // PureState normalization
  double eig_hermiticity = 1e-10;   // eig_hermitian precondition
  double reconstruction = 1e-9;     // round trips and channel equality
  double trace_preservation = 1e-10;
  double kraus_rank = 1e-10;        // Choi eigenvalues kept as Kraus operators
  double extremal_rank = 1e-8;      // singular values in Choi's criterion
  double spectral_cutoff = 1e-12;   // environment weights dropped as zero
  double purity = 1e-10;            // is_pure: tr(rho^2) >= 1 - purity
  double unitarity = 1e-10;
  double distribution = 1e-12;      // probability vectors sum to one
};

inline constexpr Tolerances kDefaultTolerances{};

// Largest row or column count any dense operator may have.
inline constexpr std::size_t kMaxJointDim = 4096;

enum class ErrorCode {
  kDimensionOverflow,
  kShapeMismatch,
  kBadSubsystemIndex,
  kNotHermitian,
  kInvalidState,
  kNotCompletelyPositive,
  kNotTracePreserving,
  kNotADistribution,
  kNotUnitary,
  kTargetNotMixed,
  kNoOverlap,
  kZeroCoefficient,
  kRadiusTooLarge,
  kInvalidArgument,
};

// Canonical message prefix for each error code ("shape mismatch", ...).
const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail = {});
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Subsystem order used throughout: [initial, final, environment].
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     std::size_t max_dim = kMaxJointDim);

// Reduced operator on the subsystems listed in `keep` (in ascending index
// order). `m` must be square with side equal to the product of `dims`.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

struct HermitianEigen {
  RealVector values;     // descending
  ComplexMatrix vectors; // columns, first non-negligible component real > 0
};

// Eigendecomposition of a Hermitian matrix. Ties in the spectrum are ordered
// by the phase-normalized eigenvectors, lexicographically descending.
HermitianEigen eig_hermitian(const ComplexMatrix& m,
                             double hermiticity_tol = kDefaultTolerances.eig_hermiticity);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);
bool all_finite(const ComplexMatrix& m);

// exp(iH) for Hermitian H, computed spectrally so the result is unitary to
// working precision.
ComplexMatrix exp_i_hermitian(const ComplexMatrix& h);

// Nearest unitary in Frobenius norm (polar factor).
ComplexMatrix nearest_unitary(const ComplexMatrix& m);

class PureState {
 public:
  PureState(ComplexVector amplitudes, double norm_tol = kDefaultTolerances.state_norm);
  static PureState basis(std::size_t dim, std::size_t index);
  // Rescales `amplitudes` to unit norm; throws kInvalidState for a zero vector.
  static PureState normalized(const ComplexVector& amplitudes);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  ComplexVector amplitudes_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix,
                         const Tolerances& tol = kDefaultTolerances);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);
  // sum_i probs[i] |i><i|
  static DensityMatrix diagonal(const RealVector& probs);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

double purity(const DensityMatrix& rho);
bool is_pure(const DensityMatrix& rho, double tol = kDefaultTolerances.purity);

// Checks entries are non-negative and sum to one; throws kNotADistribution.
void check_distribution(const RealVector& weights,
                        double tol = kDefaultTolerances.distribution);

}  // namespace qop
