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

#include "qop/counterexample.hpp"

#include <cmath>
#include <sstream>

namespace qop {

namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double overlap_with_zero(const DensityMatrix& rho) { return rho.matrix()(0, 0).real(); }

}  // namespace

void CounterexampleParams::validate() const {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "d must be at least 2");
  if (d_fin < 2) throw Error(ErrorCode::kInvalidArgument, "d_fin must be at least 2");
  if (rho_target.dim() != d_fin) {
    throw Error(ErrorCode::kShapeMismatch, "rho_target must have dimension d_fin");
  }
  if (is_pure(rho_target)) throw Error(ErrorCode::kTargetNotMixed);
  if (d == 2 && overlap_with_zero(rho_target) <= kDefaultTolerances.purity) {
    throw Error(ErrorCode::kNoOverlap);
  }
}

Channel build_counterexample(const CounterexampleParams& params) {
  params.validate();
  const auto d = static_cast<Eigen::Index>(params.d);
  const auto d_fin = static_cast<Eigen::Index>(params.d_fin);

  // Kraus operators of the generalized dilation
  //   |d-1>|0'>|0> -> sum_k sqrt(lambda_k) |d-1>|e_k'>|k>,
  // tracing out the initial system and the environment.
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index m = 0; m + 1 < d; ++m) {
    ComplexMatrix e = ComplexMatrix::Zero(d_fin, d);
    e(0, m) = 1.0;
    ops.push_back(std::move(e));
  }
  const HermitianEigen spectrum = eig_hermitian(params.rho_target.matrix());
  for (Eigen::Index k = 0; k < spectrum.values.size(); ++k) {
    if (spectrum.values(k) <= kDefaultTolerances.spectral_cutoff) break;
    ComplexMatrix e = ComplexMatrix::Zero(d_fin, d);
    e.col(d - 1) = std::sqrt(spectrum.values(k)) * spectrum.vectors.col(k);
    ops.push_back(std::move(e));
  }
  return Channel::from_kraus(KrausSet::create(params.d, params.d_fin, std::move(ops)));
}

DensityMatrix implementing_unitary_target(std::size_t d_fin, Complex alpha, Complex beta) {
  if (d_fin < 2) throw Error(ErrorCode::kInvalidArgument, "d_fin must be at least 2");
  RealVector probs = RealVector::Zero(static_cast<Eigen::Index>(d_fin));
  probs(0) = std::norm(alpha);
  probs(1) = std::norm(beta);
  return DensityMatrix::diagonal(probs);
}

Dilation implementing_unitary(std::size_t d, std::size_t d_fin, Complex alpha, Complex beta) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "d must be at least 2");
  if (d_fin < 2) throw Error(ErrorCode::kInvalidArgument, "d_fin must be at least 2");
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kDefaultTolerances.distribution) {
    throw Error(ErrorCode::kInvalidArgument, "|alpha|^2 + |beta|^2 must equal 1");
  }
  if (std::abs(alpha) <= kDefaultTolerances.distribution ||
      std::abs(beta) <= kDefaultTolerances.distribution) {
    throw Error(ErrorCode::kZeroCoefficient);
  }
  constexpr std::size_t kEnv = 2;
  const std::size_t n = d * d_fin * kEnv;
  auto joint = [&](std::size_t i, std::size_t a, std::size_t e) {
    return static_cast<Eigen::Index>((i * d_fin + a) * kEnv + e);
  };

  ComplexMatrix columns = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < d; ++i) {
    positions.push_back(static_cast<std::size_t>(joint(i, 0, 0)));
    const auto c = static_cast<Eigen::Index>(i);
    if (i + 1 < d) {
      columns(joint(i, 0, 0), c) = 1.0;
    } else {
      columns(joint(i, 0, 0), c) = alpha;
      columns(joint(i, 1, 1), c) = beta;
    }
  }
  ComplexMatrix u = complete_to_unitary(n, columns, positions);

  const auto env_dim = static_cast<Eigen::Index>(d_fin * kEnv);
  ComplexMatrix env = ComplexMatrix::Zero(env_dim, env_dim);
  env(0, 0) = 1.0;
  return Dilation::create(d, d_fin, kEnv, std::move(u), DensityMatrix(std::move(env)));
}

const char* to_string(CertificateClaim claim) {
  return claim == CertificateClaim::kNotRealizable ? "NOT_REALIZABLE" : "INCONCLUSIVE";
}

NonRealizabilityCertificate certify_nonrealizable(const CounterexampleParams& params) {
  NonRealizabilityCertificate cert;
  auto& story = cert.narrative;
  try {
    params.validate();
  } catch (const Error& err) {
    story.push_back(std::string("Input is outside the counterexample family: ") + err.what());
    story.push_back("No claim is made.");
    return cert;
  }

  const std::size_t d = params.d;
  const std::size_t d_fin = params.d_fin;
  const double rho_purity = purity(params.rho_target);
  const double overlap = overlap_with_zero(params.rho_target);

  // The premises the argument uses, checked on the constructed channel.
  const Channel ch = build_counterexample(params);
  const auto di = static_cast<Eigen::Index>(d);
  const auto dfi = static_cast<Eigen::Index>(d_fin);
  ComplexMatrix zero_proj = ComplexMatrix::Zero(dfi, dfi);
  zero_proj(0, 0) = 1.0;
  double premise_error = 0.0;
  for (Eigen::Index i = 0; i < di; ++i) {
    for (Eigen::Index j = 0; j < di; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(di, di);
      unit(i, j) = 1.0;
      const ComplexMatrix image = apply_operator(ch, unit);
      ComplexMatrix expected = ComplexMatrix::Zero(dfi, dfi);
      if (i == j) expected = (i + 1 < di) ? zero_proj : params.rho_target.matrix();
      premise_error = std::max(premise_error, (image - expected).cwiseAbs().maxCoeff());
    }
  }
  if (premise_error > kDefaultTolerances.reconstruction) {
    story.push_back("Constructed channel does not satisfy the family premises (error " +
                    fmt_double(premise_error) + ").");
    story.push_back("No claim is made.");
    return cert;
  }

  const std::string dprime = std::to_string(d_fin);
  story.push_back("Family: d = " + std::to_string(d) + ", d' = " + dprime + "; |i><i| -> |0'><0'| for i = 0.." +
                  std::to_string(d - 2) + ", |" + std::to_string(d - 1) + "><" + std::to_string(d - 1) +
                  "| -> rho' with purity " + fmt_double(rho_purity) +
                  " < 1, all off-diagonal inputs |i><j| -> 0 (checked numerically, max error " +
                  fmt_double(premise_error) + ").");
  story.push_back("Any realization initializes the final system in sum_k p_k |k'><k'| of some rank r; "
                  "each pure branch must itself send |i> (i < d-1) to |0'>, since a pure image is "
                  "not a nontrivial mixture.");

  for (std::size_t r = 2; r <= d_fin; ++r) {
    RankCount rc{r, r * (d - 1), d, r * (d - 1) > d};
    cert.rank_counts.push_back(rc);
    std::string line = "Rank " + std::to_string(r) + ": U|i>|k'> = |psi_i^k>|0'> for i < d-1, k < r gives " +
                       std::to_string(r) + "*(" + std::to_string(d) + "-1) = " +
                       std::to_string(rc.vectors_required) + " orthonormal vectors in a " +
                       std::to_string(d) + "-dimensional space; ";
    if (rc.excluded) {
      line += std::to_string(rc.vectors_required) + " > " + std::to_string(d) + ", rank " +
              std::to_string(r) + " excluded.";
    } else {
      line += std::to_string(rc.vectors_required) + " <= " + std::to_string(d) +
              ", counting does not exclude rank " + std::to_string(r) + ".";
    }
    story.push_back(std::move(line));
  }
  cert.rank_tested = 2;
  cert.vectors_required = 2 * (d - 1);
  cert.dimension_available = d;

  bool rank_two_excluded = cert.rank_counts.front().excluded;
  if (d == 2) {
    cert.d2_branch_used = true;
    story.push_back("d = 2, rank 2: U|0>|0'> = |0>|0'> and U|0>|1'> = |1>|0'> (up to a basis change "
                    "of the initial system); these two images span C^2 (x) |0'>.");
    story.push_back("U|1>|0'> and U|1>|1'> are orthogonal to C^2 (x) |0'>, so their final-system "
                    "parts are orthogonal to |0'> and <0'|Phi_k(|1><1|)|0'> = 0 for every branch k.");
    if (overlap > kDefaultTolerances.purity) {
      story.push_back("But <0'|rho'|0'> = " + fmt_double(overlap) + " != 0: rank 2 excluded.");
      rank_two_excluded = true;
    } else {
      story.push_back("<0'|rho'|0'> = 0: the d = 2 branch does not apply.");
    }
  }
  bool mixed_excluded = rank_two_excluded;
  for (std::size_t k = 1; k < cert.rank_counts.size(); ++k) {
    mixed_excluded = mixed_excluded && cert.rank_counts[k].excluded;
  }

  story.push_back("Rank 1 (pure |0'>): WLOG U|i>|0'> = |i>|0'> for i < d-1 and U|" + std::to_string(d - 1) +
                  ">|0'> = sum_i |i>|phi_i'>.");
  story.push_back("Total decoherence of (|i> + e^{it}|" + std::to_string(d - 1) +
                  ">)/sqrt(2) requires the cross term |0'><phi_i'| to vanish, so |phi_i'> = 0 for i != d-1.");
  cert.decoherence_contradiction = rho_purity < 1.0 - kDefaultTolerances.purity;
  story.push_back("Then the image of |" + std::to_string(d - 1) + "> is |phi_" + std::to_string(d - 1) +
                  "'><phi_" + std::to_string(d - 1) + "'|, a pure state, contradicting purity(rho') = " +
                  fmt_double(rho_purity) + " < 1.");

  if (mixed_excluded && cert.decoherence_contradiction) {
    cert.claim = CertificateClaim::kNotRealizable;
    story.push_back("Every initial rank of the final system is excluded: the channel is not realizable "
                    "with a " + dprime + "-dimensional mixed final-system environment.");
  } else {
    story.push_back("Some case of the argument is not covered; no claim is made.");
  }
  return cert;
}

FamilyMatch match_counterexample_family(const Channel& channel, double tol) {
  FamilyMatch out;
  const std::size_t d = channel.d_in();
  const std::size_t d_fin = channel.d_out();
  if (d < 2 || d_fin < 2) {
    out.reason = "family requires d >= 2 and d' >= 2";
    return out;
  }
  const auto di = static_cast<Eigen::Index>(d);
  auto image = [&](Eigen::Index i, Eigen::Index j) {
    ComplexMatrix unit = ComplexMatrix::Zero(di, di);
    unit(i, j) = 1.0;
    return apply_operator(channel, unit);
  };

  const ComplexMatrix common = image(0, 0);
  const HermitianEigen common_eig = eig_hermitian(common, 1e-8);
  if (common_eig.values(0) < 1.0 - tol) {
    out.reason = "image of |0> is not pure";
    return out;
  }
  for (Eigen::Index i = 1; i + 1 < di; ++i) {
    if ((image(i, i) - common).cwiseAbs().maxCoeff() > tol) {
      out.reason = "basis states 0..d-2 do not share a common image";
      return out;
    }
  }
  for (Eigen::Index i = 0; i < di; ++i) {
    for (Eigen::Index j = 0; j < di; ++j) {
      if (i != j && image(i, j).cwiseAbs().maxCoeff() > tol) {
        out.reason = "off-diagonal inputs do not totally decohere";
        return out;
      }
    }
  }

  // Rotate the final system so the common pure image becomes |0'>.
  const ComplexMatrix v = complete_to_unitary(d_fin, common_eig.vectors.col(0), {0});
  ComplexMatrix rho = v.adjoint() * image(di - 1, di - 1) * v;
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  DensityMatrix target{std::move(rho)};
  if (is_pure(target)) {
    out.reason = "image of |d-1> is pure";
    return out;
  }
  out.params = CounterexampleParams{d, d_fin, std::move(target)};
  return out;
}

}  // namespace qop
