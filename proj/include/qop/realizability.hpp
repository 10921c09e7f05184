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
#include <string>
#include <vector>

#include "qop/channel.hpp"
#include "qop/core.hpp"
#include "qop/dilation.hpp"

namespace qop {

// d^2 (d_fin^2 - 1): the number of real parameters of a d -> d_fin channel,
// matched by (spectrum) - (rephasings) + (joint unitary) - (initial-only unitary).
std::int64_t parameter_count(std::int64_t d, std::int64_t d_fin);

struct SearchConfig {
  std::size_t restarts = 50;
  std::size_t max_iters = 2000;          // per restart
  std::uint64_t seed = 1;
  double step_tolerance = 1e-12;
  double realizable_threshold = 1e-6;     // below: REALIZED
  double nonrealizable_threshold = 1e-3;  // above: LIKELY_NOT_REALIZABLE
  std::size_t threads = 0;                // 0 = hardware concurrency

  // Throws kInvalidArgument.
  void validate() const;
};

enum class Verdict { kRealized, kLikelyNotRealizable, kUndecided };

const char* to_string(Verdict verdict);

Verdict classify(double residual, const SearchConfig& cfg);

struct SearchResult {
  double best_residual = 0.0;
  ComplexMatrix best_unitary;     // on initial (x) final
  RealVector best_env_spectrum;   // final system starts in diag(spectrum)
  Verdict verdict = Verdict::kUndecided;
  std::vector<double> residual_history;  // best residual of each restart
  std::size_t best_restart = 0;
};

// Minimizes || Choi(U, p) - Choi(target) ||_F over joint unitaries U on
// initial (x) final and diagonal initial states diag(p) of the final system;
// the initial system is traced out. Each restart is a Levenberg-Marquardt
// run on the chart U exp(iG), p = softmax(z), seeded from (cfg.seed, index).
// LIKELY_NOT_REALIZABLE is numerical evidence only, never a proof.
SearchResult search_mixed_env_realization(const Channel& target, const SearchConfig& cfg);

// Dilation with no auxiliary environment that realizes a search result.
Dilation realization_dilation(const SearchResult& result, std::size_t d, std::size_t d_fin);

RealVector softmax(const RealVector& logits);

// Choi matrix of rho -> tr_initial[ U (rho (x) diag(spectrum)) U^dagger ].
ComplexMatrix mixed_env_choi(const ComplexMatrix& u, const RealVector& spectrum, std::size_t d,
                             std::size_t d_fin);

// Residual map used by the search, exposed for derivative checks. Residual
// vector is [Re(C - T); Im(C - T)] in column-major order.
class RealizationObjective {
 public:
  RealizationObjective(std::size_t d, std::size_t d_fin, ComplexMatrix target_choi);

  std::size_t joint_dim() const { return n_; }
  std::size_t num_params() const { return n_ * n_ + d_fin_; }

  RealVector residual(const ComplexMatrix& u, const RealVector& logits) const;
  // Derivative at G = 0 of residual(u exp(iG(x)), logits + dz).
  Eigen::MatrixXd jacobian(const ComplexMatrix& u, const RealVector& logits) const;
  // Hermitian generator from n^2 reals: diagonal first, then (re, im) of
  // each upper-triangular entry in row order.
  static ComplexMatrix generator(const RealVector& params, std::size_t n);

 private:
  std::size_t d_;
  std::size_t d_fin_;
  std::size_t n_;
  ComplexMatrix target_;
};

struct PerturbationSample {
  double weight;
  double residual;
  Verdict verdict;
};

struct PerturbationReport {
  double radius = 0.0;
  std::size_t n_samples = 0;
  std::size_t realized = 0;
  std::size_t likely_not_realizable = 0;
  std::size_t undecided = 0;
  double fraction_likely_not_realizable = 0.0;
  double residual_min = 0.0;
  double residual_max = 0.0;
  double residual_mean = 0.0;
  double residual_median = 0.0;
  std::vector<PerturbationSample> samples;
  std::string note;
};

// Samples (1 - w) center + w R with R a Haar-induced random channel and
// w uniform in (0, radius], runs the searcher on each and tallies verdicts.
PerturbationReport perturbation_experiment(const Channel& center, double radius,
                                           std::size_t n_samples, const SearchConfig& cfg);

}  // namespace qop
