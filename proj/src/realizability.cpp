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

#include "qop/realizability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "qop/random.hpp"

namespace qop {

std::int64_t parameter_count(std::int64_t d, std::int64_t d_fin) {
  if (d < 1 || d_fin < 1) throw Error(ErrorCode::kInvalidArgument, "dimensions must be positive");
  return d * d * (d_fin * d_fin - 1);
}

void SearchConfig::validate() const {
  if (restarts == 0) throw Error(ErrorCode::kInvalidArgument, "restarts must be positive");
  if (max_iters == 0) throw Error(ErrorCode::kInvalidArgument, "max_iters must be positive");
  if (!(step_tolerance > 0.0)) throw Error(ErrorCode::kInvalidArgument, "step_tolerance must be positive");
  if (!(realizable_threshold > 0.0) || !(realizable_threshold < nonrealizable_threshold)) {
    throw Error(ErrorCode::kInvalidArgument,
                "thresholds must satisfy 0 < realizable < nonrealizable");
  }
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kRealized: return "REALIZED";
    case Verdict::kLikelyNotRealizable: return "LIKELY_NOT_REALIZABLE";
    case Verdict::kUndecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

Verdict classify(double residual, const SearchConfig& cfg) {
  if (residual < cfg.realizable_threshold) return Verdict::kRealized;
  if (residual > cfg.nonrealizable_threshold) return Verdict::kLikelyNotRealizable;
  return Verdict::kUndecided;
}

RealVector softmax(const RealVector& logits) {
  RealVector p = (logits.array() - logits.maxCoeff()).exp();
  return p / p.sum();
}

namespace {

// K_{m,k} = (<m| (x) I) U (I (x) |k'>), a d_fin x d matrix; its column-major
// vectorization indexes the Choi matrix as (i, a).
ComplexVector branch_vector(const ComplexMatrix& u, Eigen::Index m, Eigen::Index k, Eigen::Index d,
                            Eigen::Index d_fin) {
  ComplexVector v(d * d_fin);
  for (Eigen::Index i = 0; i < d; ++i) {
    v.segment(i * d_fin, d_fin) = u.block(m * d_fin, i * d_fin + k, d_fin, 1);
  }
  return v;
}

// Choi matrix of each pure branch k of the final-system initial state.
std::vector<ComplexMatrix> branch_chois(const ComplexMatrix& u, std::size_t d, std::size_t d_fin) {
  const auto di = static_cast<Eigen::Index>(d);
  const auto dfi = static_cast<Eigen::Index>(d_fin);
  std::vector<ComplexMatrix> out;
  for (Eigen::Index k = 0; k < dfi; ++k) {
    ComplexMatrix c = ComplexMatrix::Zero(di * dfi, di * dfi);
    for (Eigen::Index m = 0; m < di; ++m) {
      const ComplexVector v = branch_vector(u, m, k, di, dfi);
      c.noalias() += v * v.adjoint();
    }
    out.push_back(std::move(c));
  }
  return out;
}

void write_residual(const ComplexMatrix& diff, Eigen::Ref<RealVector> out) {
  const Eigen::Index sz = diff.size();
  for (Eigen::Index i = 0; i < sz; ++i) {
    out(i) = diff.data()[i].real();
    out(sz + i) = diff.data()[i].imag();
  }
}

}  // namespace

ComplexMatrix mixed_env_choi(const ComplexMatrix& u, const RealVector& spectrum, std::size_t d,
                             std::size_t d_fin) {
  const auto side = static_cast<Eigen::Index>(d * d_fin);
  if (u.rows() != side || u.cols() != side || spectrum.size() != static_cast<Eigen::Index>(d_fin)) {
    throw Error(ErrorCode::kShapeMismatch, "unitary must be (d*d_fin)^2, spectrum of length d_fin");
  }
  const auto chois = branch_chois(u, d, d_fin);
  ComplexMatrix c = ComplexMatrix::Zero(side, side);
  for (std::size_t k = 0; k < chois.size(); ++k) c += spectrum(static_cast<Eigen::Index>(k)) * chois[k];
  return c;
}

RealizationObjective::RealizationObjective(std::size_t d, std::size_t d_fin, ComplexMatrix target_choi)
    : d_(d), d_fin_(d_fin), n_(d * d_fin), target_(std::move(target_choi)) {
  const auto side = static_cast<Eigen::Index>(n_);
  if (target_.rows() != side || target_.cols() != side) {
    throw Error(ErrorCode::kShapeMismatch, "target Choi side must be d*d_fin");
  }
}

ComplexMatrix RealizationObjective::generator(const RealVector& params, std::size_t n) {
  const auto ni = static_cast<Eigen::Index>(n);
  ComplexMatrix h = ComplexMatrix::Zero(ni, ni);
  Eigen::Index idx = 0;
  for (Eigen::Index a = 0; a < ni; ++a) h(a, a) = params(idx++);
  for (Eigen::Index a = 0; a < ni; ++a) {
    for (Eigen::Index b = a + 1; b < ni; ++b) {
      h(a, b) = Complex(params(idx), params(idx + 1));
      h(b, a) = std::conj(h(a, b));
      idx += 2;
    }
  }
  return h;
}

RealVector RealizationObjective::residual(const ComplexMatrix& u, const RealVector& logits) const {
  RealVector r(2 * target_.size());
  write_residual(mixed_env_choi(u, softmax(logits), d_, d_fin_) - target_, r);
  return r;
}

Eigen::MatrixXd RealizationObjective::jacobian(const ComplexMatrix& u, const RealVector& logits) const {
  const auto di = static_cast<Eigen::Index>(d_);
  const auto dfi = static_cast<Eigen::Index>(d_fin_);
  const auto ni = static_cast<Eigen::Index>(n_);
  const RealVector p = softmax(logits);
  const Complex i_unit(0.0, 1.0);

  Eigen::MatrixXd jac(2 * ni * ni, static_cast<Eigen::Index>(num_params()));

  // Cache the branch vectors of the current point.
  std::vector<ComplexVector> vs;
  for (Eigen::Index k = 0; k < dfi; ++k) {
    for (Eigen::Index m = 0; m < di; ++m) vs.push_back(branch_vector(u, m, k, di, dfi));
  }

  RealVector unit = RealVector::Zero(ni * ni);
  for (Eigen::Index l = 0; l < ni * ni; ++l) {
    unit.setZero();
    unit(l) = 1.0;
    const ComplexMatrix du = i_unit * (u * generator(unit, n_));
    ComplexMatrix w = ComplexMatrix::Zero(ni, ni);
    for (Eigen::Index k = 0; k < dfi; ++k) {
      for (Eigen::Index m = 0; m < di; ++m) {
        const ComplexVector dv = branch_vector(du, m, k, di, dfi);
        w.noalias() += p(k) * dv * vs[static_cast<std::size_t>(k * di + m)].adjoint();
      }
    }
    write_residual(w + w.adjoint(), jac.col(l));
  }

  const auto chois = branch_chois(u, d_, d_fin_);
  ComplexMatrix c = ComplexMatrix::Zero(ni, ni);
  for (Eigen::Index k = 0; k < dfi; ++k) c += p(k) * chois[static_cast<std::size_t>(k)];
  for (Eigen::Index l = 0; l < dfi; ++l) {
    // d p_k / d z_l = p_k (delta_kl - p_l)  =>  dC/dz_l = p_l (C_l - C).
    write_residual(p(l) * (chois[static_cast<std::size_t>(l)] - c), jac.col(ni * ni + l));
  }
  return jac;
}

namespace {

struct RestartOutcome {
  double residual = std::numeric_limits<double>::infinity();
  ComplexMatrix unitary;
  RealVector spectrum;
};

// One Levenberg-Marquardt descent (Nielsen's damping schedule). The unitary
// is updated multiplicatively, U <- U exp(iG), so every iterate stays on the
// unitary group and the Jacobian is always taken at G = 0.
RestartOutcome run_restart(const RealizationObjective& objective, std::size_t d_fin,
                           const SearchConfig& cfg, std::uint64_t restart_seed) {
  const std::size_t n = objective.joint_dim();
  const auto nn = static_cast<Eigen::Index>(n * n);
  Rng rng(restart_seed);
  ComplexMatrix u = exp_i_hermitian(random_hermitian(n, rng));
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector z(static_cast<Eigen::Index>(d_fin));
  for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = normal(rng);

  RealVector r = objective.residual(u, z);
  double cost = 0.5 * r.squaredNorm();
  double mu = -1.0;
  double nu = 2.0;
  bool need_jacobian = true;
  Eigen::MatrixXd jtj;
  RealVector g;
  std::size_t accepted = 0;

  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    if (need_jacobian) {
      const Eigen::MatrixXd jac = objective.jacobian(u, z);
      jtj = jac.transpose() * jac;
      g = jac.transpose() * r;
      need_jacobian = false;
      if (g.lpNorm<Eigen::Infinity>() < 1e-15) break;
      if (mu < 0.0) mu = 1e-3 * std::max(jtj.diagonal().maxCoeff(), 1e-12);
    }
    Eigen::MatrixXd damped = jtj;
    damped.diagonal().array() += mu;
    const RealVector step = damped.ldlt().solve(-g);
    if (!step.allFinite()) break;
    if (step.norm() < cfg.step_tolerance) break;

    const ComplexMatrix u_new = u * exp_i_hermitian(RealizationObjective::generator(step.head(nn), n));
    const RealVector z_new = z + step.tail(z.size());
    const RealVector r_new = objective.residual(u_new, z_new);
    const double cost_new = 0.5 * r_new.squaredNorm();
    const double predicted = 0.5 * step.dot(mu * step - g);
    const double gain = predicted > 0.0 ? (cost - cost_new) / predicted : -1.0;

    if (gain > 0.0) {
      u = u_new;
      z = z_new;
      r = r_new;
      cost = cost_new;
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * gain - 1.0, 3));
      nu = 2.0;
      need_jacobian = true;
      if (++accepted % 64 == 0) u = nearest_unitary(u);
      if (cost == 0.0) break;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (mu > 1e30) break;
    }
  }
  return RestartOutcome{std::sqrt(2.0 * cost), nearest_unitary(u), softmax(z)};
}

}  // namespace

Dilation realization_dilation(const SearchResult& result, std::size_t d, std::size_t d_fin) {
  return Dilation::create(d, d_fin, 0, result.best_unitary,
                          DensityMatrix::diagonal(result.best_env_spectrum));
}

SearchResult search_mixed_env_realization(const Channel& target, const SearchConfig& cfg) {
  cfg.validate();
  const std::size_t d = target.d_in();
  const std::size_t d_fin = target.d_out();
  if (d * d_fin > kMaxJointDim) throw Error(ErrorCode::kDimensionOverflow);
  const RealizationObjective objective(d, d_fin, target.choi().matrix());

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < cfg.restarts; idx = next++) {
      try {
        RestartOutcome out = run_restart(objective, d_fin, cfg, derive_seed(cfg.seed, idx));
        // Re-verify through the dilation module, independent of the fast path.
        const Dilation dil = Dilation::create(d, d_fin, 0, out.unitary, DensityMatrix::diagonal(out.spectrum));
        out.residual = distance(channel_from_dilation(dil), target);
        outcomes[idx] = std::move(out);
      } catch (const Error&) {
        outcomes[idx] = RestartOutcome{};
      }
    }
  };
  std::size_t n_threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, cfg.restarts);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SearchResult result;
  result.best_residual = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < outcomes.size(); ++idx) {
    result.residual_history.push_back(outcomes[idx].residual);
    // Strict comparison keeps the lowest restart index on ties.
    if (outcomes[idx].residual < result.best_residual) {
      result.best_residual = outcomes[idx].residual;
      result.best_restart = idx;
    }
  }
  if (std::isfinite(result.best_residual)) {
    result.best_unitary = outcomes[result.best_restart].unitary;
    result.best_env_spectrum = outcomes[result.best_restart].spectrum;
    result.verdict = classify(result.best_residual, cfg);
  } else {
    const auto side = static_cast<Eigen::Index>(d * d_fin);
    result.best_unitary = ComplexMatrix::Identity(side, side);
    result.best_env_spectrum = RealVector::Constant(static_cast<Eigen::Index>(d_fin), 1.0 / static_cast<double>(d_fin));
    result.verdict = Verdict::kUndecided;
  }
  return result;
}

PerturbationReport perturbation_experiment(const Channel& center, double radius, std::size_t n_samples,
                                           const SearchConfig& cfg) {
  if (radius >= 1.0) throw Error(ErrorCode::kRadiusTooLarge);
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  if (n_samples == 0) throw Error(ErrorCode::kInvalidArgument, "n_samples must be positive");
  cfg.validate();

  PerturbationReport report;
  report.radius = radius;
  report.n_samples = n_samples;
  const std::uint64_t sample_base = derive_seed(cfg.seed, 0x70657274ULL);
  for (std::size_t s = 0; s < n_samples; ++s) {
    Rng rng(derive_seed(sample_base, s));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double weight = radius * (1.0 - uniform(rng));  // in (0, radius]
    const Channel noise = random_channel(center.d_in(), center.d_out(), rng);
    RealVector w(2);
    w << 1.0 - weight, weight;
    const Channel sample = mix({center, noise}, w);

    SearchConfig sample_cfg = cfg;
    sample_cfg.seed = derive_seed(sample_base ^ 0x5EA2C4ULL, s);
    const SearchResult res = search_mixed_env_realization(sample, sample_cfg);
    report.samples.push_back(PerturbationSample{weight, res.best_residual, res.verdict});
    switch (res.verdict) {
      case Verdict::kRealized: ++report.realized; break;
      case Verdict::kLikelyNotRealizable: ++report.likely_not_realizable; break;
      case Verdict::kUndecided: ++report.undecided; break;
    }
  }

  std::vector<double> residuals;
  for (const auto& s : report.samples) residuals.push_back(s.residual);
  std::sort(residuals.begin(), residuals.end());
  report.residual_min = residuals.front();
  report.residual_max = residuals.back();
  report.residual_mean =
      std::accumulate(residuals.begin(), residuals.end(), 0.0) / static_cast<double>(residuals.size());
  const std::size_t mid = residuals.size() / 2;
  report.residual_median =
      residuals.size() % 2 == 1 ? residuals[mid] : 0.5 * (residuals[mid - 1] + residuals[mid]);
  report.fraction_likely_not_realizable =
      static_cast<double>(report.likely_not_realizable) / static_cast<double>(n_samples);
  report.note =
      "Observational: verdicts come from a numerical local search; LIKELY_NOT_REALIZABLE is "
      "evidence, not proof.";
  return report;
}

}  // namespace qop
