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

#include "qop/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qop {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionOverflow: return "dimension overflow";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
    case ErrorCode::kBadSubsystemIndex: return "bad subsystem index";
    case ErrorCode::kNotHermitian: return "not hermitian";
    case ErrorCode::kInvalidState: return "invalid state";
    case ErrorCode::kNotCompletelyPositive: return "not completely positive";
    case ErrorCode::kNotTracePreserving: return "not trace preserving";
    case ErrorCode::kNotADistribution: return "not a distribution";
    case ErrorCode::kNotUnitary: return "not unitary";
    case ErrorCode::kTargetNotMixed: return "target image must be mixed";
    case ErrorCode::kNoOverlap: return "d=2 requires overlap with |0'>";
    case ErrorCode::kZeroCoefficient: return "coefficients must be nonzero";
    case ErrorCode::kRadiusTooLarge: return "radius too large";
    case ErrorCode::kInvalidArgument: return "invalid argument";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(detail.empty() ? std::string(error_name(code))
                                        : std::string(error_name(code)) + ": " + detail),
      code_(code) {}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t max_dim) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > max_dim || cols > max_dim) {
    throw Error(ErrorCode::kDimensionOverflow,
                std::to_string(rows) + "x" + std::to_string(cols) + " exceeds " +
                    std::to_string(max_dim));
  }
  ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (dims.empty() || m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != total) {
    throw Error(ErrorCode::kShapeMismatch,
                "matrix side " + std::to_string(m.rows()) + " vs dims product " +
                    std::to_string(total));
  }
  if (keep.empty()) throw Error(ErrorCode::kBadSubsystemIndex, "keep set is empty");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) {
      throw Error(ErrorCode::kBadSubsystemIndex, std::to_string(k));
    }
    kept[k] = true;
  }

  // Split every joint index into (kept part, traced part), both row-major.
  std::vector<std::size_t> kept_index(total), traced_index(total);
  std::size_t kept_total = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (kept[s]) kept_total *= dims[s];
  }
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx, k_idx = 0, t_idx = 0, k_stride = 1, t_stride = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        k_idx += digit * k_stride;
        k_stride *= dims[s];
      } else {
        t_idx += digit * t_stride;
        t_stride *= dims[s];
      }
    }
    kept_index[idx] = k_idx;
    traced_index[idx] = t_idx;
  }

  const auto side = static_cast<Eigen::Index>(kept_total);
  ComplexMatrix out = ComplexMatrix::Zero(side, side);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      if (traced_index[i] == traced_index[j]) {
        out(static_cast<Eigen::Index>(kept_index[i]), static_cast<Eigen::Index>(kept_index[j])) +=
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix gram = m.adjoint() * m;
  return (gram - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
  }
  return true;
}

namespace {

void normalize_phase(Eigen::Ref<ComplexVector> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12 * std::max(scale, 1.0)) {
      v *= std::conj(v(i)) / mag;
      v(i) = mag;
      return;
    }
  }
}

bool lexicographically_greater(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() > b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() > b(i).imag();
  }
  return false;
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& m, double hermiticity_tol) {
  if (!is_hermitian(m, hermiticity_tol)) throw Error(ErrorCode::kNotHermitian);
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const Eigen::Index n = m.rows();

  RealVector raw_values = solver.eigenvalues();
  ComplexMatrix raw_vectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < n; ++c) normalize_phase(raw_vectors.col(c));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return raw_values(a) > raw_values(b);
  });
  const double tie = 1e-12 * std::max(1.0, n > 0 ? raw_values.cwiseAbs().maxCoeff() : 0.0);
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start + 1;
    while (end < order.size() && raw_values(order[end - 1]) - raw_values(order[end]) <= tie) ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](Eigen::Index a, Eigen::Index b) {
                       return lexicographically_greater(raw_vectors.col(a), raw_vectors.col(b));
                     });
    start = end;
  }

  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = raw_values(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = raw_vectors.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()));
  const RealVector& lambda = solver.eigenvalues();
  ComplexVector phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases(i) = std::polar(1.0, lambda(i));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

ComplexMatrix nearest_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

PureState::PureState(ComplexVector amplitudes, double norm_tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw Error(ErrorCode::kInvalidState, "empty state");
  if (!all_finite(amplitudes_)) throw Error(ErrorCode::kInvalidState, "non-finite amplitude");
  if (std::abs(amplitudes_.norm() - 1.0) > norm_tol) {
    throw Error(ErrorCode::kInvalidState, "norm is not 1");
  }
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorCode::kBadSubsystemIndex, "basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::normalized(const ComplexVector& amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::kInvalidState, "zero vector");
  return PureState(amplitudes / norm);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, const Tolerances& tol)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "density matrix must be square");
  }
  if (!all_finite(matrix_)) throw Error(ErrorCode::kInvalidState, "non-finite entry");
  if (!is_hermitian(matrix_, tol.hermiticity)) {
    throw Error(ErrorCode::kInvalidState, "not hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > tol.trace) {
    throw Error(ErrorCode::kInvalidState, "trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol.psd) {
    throw Error(ErrorCode::kInvalidState, "negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& probs) {
  check_distribution(probs);
  return DensityMatrix(probs.cast<Complex>().asDiagonal().toDenseMatrix());
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

bool is_pure(const DensityMatrix& rho, double tol) { return purity(rho) >= 1.0 - tol; }

void check_distribution(const RealVector& weights, double tol) {
  if (weights.size() == 0) throw Error(ErrorCode::kNotADistribution, "empty");
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights(i)) || weights(i) < 0.0) {
      throw Error(ErrorCode::kNotADistribution, "negative or non-finite weight");
    }
  }
  if (std::abs(weights.sum() - 1.0) > tol) {
    throw Error(ErrorCode::kNotADistribution, "weights do not sum to 1");
  }
}

}  // namespace qop
