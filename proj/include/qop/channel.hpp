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

#include <cstddef>
#include <vector>

#include "qop/core.hpp"

namespace qop {

class KrausSet;
class ChoiMatrix;
class Channel;
KrausSet choi_to_kraus(const ChoiMatrix& choi);

// Kraus operators E_k (d_out x d_in) with sum_k E_k^dagger E_k = I.
class KrausSet {
 public:
  // Throws kShapeMismatch on inconsistent shapes and kNotTracePreserving when
  // the completeness relation fails by more than `tp_tol` (max entry).
  static KrausSet create(std::size_t d_in, std::size_t d_out, std::vector<ComplexMatrix> operators,
                         double tp_tol = kDefaultTolerances.trace_preservation);

  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }
  std::size_t size() const { return operators_.size(); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const ComplexMatrix& operator[](std::size_t k) const { return operators_[k]; }

 private:
  friend KrausSet choi_to_kraus(const ChoiMatrix& choi);
  KrausSet(std::size_t d_in, std::size_t d_out, std::vector<ComplexMatrix> operators)
      : d_in_(d_in), d_out_(d_out), operators_(std::move(operators)) {}

  std::size_t d_in_;
  std::size_t d_out_;
  std::vector<ComplexMatrix> operators_;
};

// Unnormalized Choi matrix sum_ij |i><j| (x) Phi(|i><j|), input factor first.
// Trace preservation reads tr_out(C) = I_{d_in}.
class ChoiMatrix {
 public:
  // Throws kNotCompletelyPositive (eigenvalue below -psd) or
  // kNotTracePreserving (max entry of tr_out(C) - I above `tp_tol`).
  static ChoiMatrix create(std::size_t d_in, std::size_t d_out, ComplexMatrix matrix,
                           double tp_tol = kDefaultTolerances.trace_preservation,
                           double psd_tol = kDefaultTolerances.psd);

  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  friend ChoiMatrix kraus_to_choi(const KrausSet& kraus);
  friend Channel mix(const std::vector<Channel>& channels, const RealVector& weights);
  ChoiMatrix(std::size_t d_in, std::size_t d_out, ComplexMatrix matrix)
      : d_in_(d_in), d_out_(d_out), matrix_(std::move(matrix)) {}

  std::size_t d_in_;
  std::size_t d_out_;
  ComplexMatrix matrix_;
};

ChoiMatrix kraus_to_choi(const KrausSet& kraus);

// Minimal Kraus set: one operator per Choi eigenvalue above the Kraus-rank
// threshold, in descending eigenvalue order.
KrausSet choi_to_kraus(const ChoiMatrix& choi);
KrausSet choi_to_kraus(std::size_t d_in, std::size_t d_out, const ComplexMatrix& choi);

// A CPTP map held in both representations. The Kraus set is always the
// minimal one derived from the Choi spectrum.
class Channel {
 public:
  static Channel from_kraus(const KrausSet& kraus);
  static Channel from_choi(const ChoiMatrix& choi);

  std::size_t d_in() const { return choi_.d_in(); }
  std::size_t d_out() const { return choi_.d_out(); }
  const KrausSet& kraus() const { return kraus_; }
  const ChoiMatrix& choi() const { return choi_; }

 private:
  Channel(KrausSet kraus, ChoiMatrix choi) : kraus_(std::move(kraus)), choi_(std::move(choi)) {}

  KrausSet kraus_;
  ChoiMatrix choi_;
};

Channel identity_channel(std::size_t dim);
Channel unitary_channel(const ComplexMatrix& u);

// Phi(X) for an arbitrary d_in x d_in operator X, through the Kraus form.
ComplexMatrix apply_operator(const Channel& ch, const ComplexMatrix& x);

// Phi(X) by contraction with the Choi matrix:
// Phi(X)_ab = sum_ij X_ij C[(i,a),(j,b)].
ComplexMatrix apply_choi(const ChoiMatrix& choi, const ComplexMatrix& x);

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);

// Convex combination; Choi(result) = sum_k w_k Choi(channels[k]).
Channel mix(const std::vector<Channel>& channels, const RealVector& weights);

// Frobenius norm of the Choi difference.
double distance(const Channel& a, const Channel& b);

// Choi's extremality criterion: {E_i^dagger E_j} linearly independent.
// Expects a minimal Kraus set.
bool is_extremal(const KrausSet& kraus, double rank_tol = kDefaultTolerances.extremal_rank);

// Numerical rank of a Choi matrix (eigenvalues above the Kraus threshold).
std::size_t choi_rank(const ChoiMatrix& choi);

}  // namespace qop
