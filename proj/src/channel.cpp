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

#include "qop/channel.hpp"

#include <cmath>

namespace qop {

namespace {

double tp_error_kraus(std::size_t d_in, const std::vector<ComplexMatrix>& ops) {
  const auto n = static_cast<Eigen::Index>(d_in);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& e : ops) sum += e.adjoint() * e;
  return (sum - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

KrausSet KrausSet::create(std::size_t d_in, std::size_t d_out, std::vector<ComplexMatrix> operators,
                          double tp_tol) {
  if (d_in == 0 || d_out == 0 || operators.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "empty Kraus set");
  }
  for (const auto& e : operators) {
    if (static_cast<std::size_t>(e.rows()) != d_out || static_cast<std::size_t>(e.cols()) != d_in) {
      throw Error(ErrorCode::kShapeMismatch, "Kraus operator is not d_out x d_in");
    }
    if (!all_finite(e)) throw Error(ErrorCode::kInvalidArgument, "non-finite Kraus entry");
  }
  if (tp_error_kraus(d_in, operators) > tp_tol) throw Error(ErrorCode::kNotTracePreserving);
  return KrausSet(d_in, d_out, std::move(operators));
}

ChoiMatrix ChoiMatrix::create(std::size_t d_in, std::size_t d_out, ComplexMatrix matrix,
                              double tp_tol, double psd_tol) {
  const auto side = static_cast<Eigen::Index>(d_in * d_out);
  if (d_in == 0 || d_out == 0 || matrix.rows() != side || matrix.cols() != side) {
    throw Error(ErrorCode::kShapeMismatch, "Choi matrix side must be d_in*d_out");
  }
  if (!all_finite(matrix)) throw Error(ErrorCode::kInvalidArgument, "non-finite Choi entry");
  if (!is_hermitian(matrix, psd_tol)) throw Error(ErrorCode::kNotCompletelyPositive, "not hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (matrix + matrix.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -psd_tol) throw Error(ErrorCode::kNotCompletelyPositive);
  const ComplexMatrix reduced = partial_trace(matrix, {d_in, d_out}, {0});
  const auto n = static_cast<Eigen::Index>(d_in);
  if ((reduced - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > tp_tol) {
    throw Error(ErrorCode::kNotTracePreserving);
  }
  return ChoiMatrix(d_in, d_out, std::move(matrix));
}

ChoiMatrix kraus_to_choi(const KrausSet& kraus) {
  const std::size_t d_in = kraus.d_in();
  const std::size_t d_out = kraus.d_out();
  const auto side = static_cast<Eigen::Index>(d_in * d_out);
  ComplexMatrix c = ComplexMatrix::Zero(side, side);
  ComplexVector v(side);
  for (const auto& e : kraus.operators()) {
    // v[(i,a)] = E[a,i]; C = sum_k v_k v_k^dagger.
    for (Eigen::Index i = 0; i < e.cols(); ++i) {
      v.segment(i * e.rows(), e.rows()) = e.col(i);
    }
    c.noalias() += v * v.adjoint();
  }
  return ChoiMatrix(d_in, d_out, std::move(c));
}

KrausSet choi_to_kraus(const ChoiMatrix& choi) {
  const auto d_in = static_cast<Eigen::Index>(choi.d_in());
  const auto d_out = static_cast<Eigen::Index>(choi.d_out());
  const HermitianEigen eig = eig_hermitian(choi.matrix(), kDefaultTolerances.psd);
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) <= kDefaultTolerances.kraus_rank) break;
    const double scale = std::sqrt(eig.values(k));
    ComplexMatrix e(d_out, d_in);
    for (Eigen::Index i = 0; i < d_in; ++i) {
      e.col(i) = scale * eig.vectors.col(k).segment(i * d_out, d_out);
    }
    ops.push_back(std::move(e));
  }
  return KrausSet(choi.d_in(), choi.d_out(), std::move(ops));
}

KrausSet choi_to_kraus(std::size_t d_in, std::size_t d_out, const ComplexMatrix& choi) {
  return choi_to_kraus(ChoiMatrix::create(d_in, d_out, choi));
}

std::size_t choi_rank(const ChoiMatrix& choi) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(choi.matrix(), Eigen::EigenvaluesOnly);
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (solver.eigenvalues()(k) > kDefaultTolerances.kraus_rank) ++rank;
  }
  return rank;
}

Channel Channel::from_kraus(const KrausSet& kraus) {
  ChoiMatrix choi = kraus_to_choi(kraus);
  KrausSet minimal = choi_to_kraus(choi);
  return Channel(std::move(minimal), std::move(choi));
}

Channel Channel::from_choi(const ChoiMatrix& choi) { return Channel(choi_to_kraus(choi), choi); }

Channel identity_channel(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Channel::from_kraus(KrausSet::create(dim, dim, {ComplexMatrix::Identity(n, n)}));
}

Channel unitary_channel(const ComplexMatrix& u) {
  if (!is_unitary(u, kDefaultTolerances.unitarity)) throw Error(ErrorCode::kNotUnitary);
  const auto dim = static_cast<std::size_t>(u.rows());
  return Channel::from_kraus(KrausSet::create(dim, dim, {u}));
}

ComplexMatrix apply_operator(const Channel& ch, const ComplexMatrix& x) {
  const auto d_in = static_cast<Eigen::Index>(ch.d_in());
  if (x.rows() != d_in || x.cols() != d_in) {
    throw Error(ErrorCode::kShapeMismatch, "operator dimension differs from channel input");
  }
  const auto d_out = static_cast<Eigen::Index>(ch.d_out());
  ComplexMatrix out = ComplexMatrix::Zero(d_out, d_out);
  for (const auto& e : ch.kraus().operators()) out.noalias() += e * x * e.adjoint();
  return out;
}

ComplexMatrix apply_choi(const ChoiMatrix& choi, const ComplexMatrix& x) {
  const auto d_in = static_cast<Eigen::Index>(choi.d_in());
  const auto d_out = static_cast<Eigen::Index>(choi.d_out());
  if (x.rows() != d_in || x.cols() != d_in) {
    throw Error(ErrorCode::kShapeMismatch, "operator dimension differs from channel input");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_out, d_out);
  for (Eigen::Index i = 0; i < d_in; ++i) {
    for (Eigen::Index j = 0; j < d_in; ++j) {
      out += x(i, j) * choi.matrix().block(i * d_out, j * d_out, d_out, d_out);
    }
  }
  return out;
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.d_in()) {
    throw Error(ErrorCode::kShapeMismatch, "state dimension differs from channel input");
  }
  return DensityMatrix(apply_operator(ch, rho.matrix()));
}

Channel mix(const std::vector<Channel>& channels, const RealVector& weights) {
  if (channels.empty() || static_cast<std::size_t>(weights.size()) != channels.size()) {
    throw Error(ErrorCode::kShapeMismatch, "one weight per channel required");
  }
  const std::size_t d_in = channels.front().d_in();
  const std::size_t d_out = channels.front().d_out();
  for (const auto& ch : channels) {
    if (ch.d_in() != d_in || ch.d_out() != d_out) {
      throw Error(ErrorCode::kShapeMismatch, "channels have different dimensions");
    }
  }
  check_distribution(weights);
  ComplexMatrix c = ComplexMatrix::Zero(channels.front().choi().matrix().rows(),
                                        channels.front().choi().matrix().cols());
  for (std::size_t k = 0; k < channels.size(); ++k) {
    c += weights(static_cast<Eigen::Index>(k)) * channels[k].choi().matrix();
  }
  return Channel::from_choi(ChoiMatrix(d_in, d_out, std::move(c)));
}

double distance(const Channel& a, const Channel& b) {
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
    throw Error(ErrorCode::kShapeMismatch, "channels have different dimensions");
  }
  return (a.choi().matrix() - b.choi().matrix()).norm();
}

bool is_extremal(const KrausSet& kraus, double rank_tol) {
  const std::size_t r = kraus.size();
  const std::size_t d2 = kraus.d_in() * kraus.d_in();
  if (r * r > d2) return false;
  ComplexMatrix stacked(static_cast<Eigen::Index>(r * r), static_cast<Eigen::Index>(d2));
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const ComplexMatrix prod = kraus[i].adjoint() * kraus[j];
      stacked.row(row++) = prod.reshaped<Eigen::RowMajor>().transpose();
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked);
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > rank_tol) ++rank;
  }
  return rank == r * r;
}

}  // namespace qop
