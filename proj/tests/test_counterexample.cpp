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

#include <doctest.h>

#include <functional>

#include "oracles.hpp"
#include "qop/counterexample.hpp"
#include "qop/random.hpp"

using namespace qop;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected qop::Error");
  return ErrorCode::kInvalidArgument;
}

bool narrative_contains(const NonRealizabilityCertificate& cert, const std::string& needle) {
  for (const auto& s : cert.narrative)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

// Random mixed target; for d = 2 the |0'> overlap is kept away from zero.
DensityMatrix admissible_target(std::size_t d, std::size_t d_fin, Rng& rng) {
  for (;;) {
    DensityMatrix rho = random_density_matrix(d_fin, rng);
    if (purity(rho) < 1.0 - 1e-6 && (d > 2 || rho.matrix()(0, 0).real() > 1e-3)) return rho;
  }
}

// Action formula written directly from the amplitudes.
ComplexMatrix formula_image(const ComplexVector& amps, const DensityMatrix& target) {
  const Eigen::Index d = amps.size();
  const Eigen::Index d_fin = static_cast<Eigen::Index>(target.dim());
  double weight_rest = 0.0;
  for (Eigen::Index i = 0; i + 1 < d; ++i) weight_rest += std::norm(amps(i));
  ComplexMatrix out = std::norm(amps(d - 1)) * target.matrix();
  out += weight_rest * oracle::ket_bra(d_fin, 0, 0);
  return out;
}

}  // namespace

TEST_CASE("family examples at d = 3") {
  const DensityMatrix half = DensityMatrix::maximally_mixed(2);
  const Channel ch = build_counterexample({3, 2, half});
  CHECK(max_abs(apply_operator(ch, oracle::ket_bra(3, 0, 0)) - oracle::ket_bra(2, 0, 0)) < 1e-12);
  CHECK(max_abs(apply_operator(ch, oracle::ket_bra(3, 2, 2)) - half.matrix()) < 1e-12);
  ComplexVector v = ComplexVector::Zero(3);
  v(0) = v(2) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix out = apply_operator(ch, v * v.adjoint());
  const ComplexMatrix expected = 0.5 * oracle::ket_bra(2, 0, 0) + 0.5 * half.matrix();
  CHECK(max_abs(out - expected) < 1e-12);
}

TEST_CASE("family channels are valid and follow the action formula") {
  Rng rng(1);
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::size_t d_fin = 2; d_fin <= 3; ++d_fin) {
      const DensityMatrix target = admissible_target(d, d_fin, rng);
      const Channel ch = build_counterexample({d, d_fin, target});
      const ComplexMatrix tr_out = oracle::partial_trace(ch.choi().matrix(), {d, d_fin}, {true, false});
      CHECK(max_abs(tr_out - ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))) <
            1e-10);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ch.choi().matrix());
      CHECK(es.eigenvalues().minCoeff() > -1e-10);
      std::vector<Eigen::VectorXcd> cols;
      for (Eigen::Index c = 0; c < target.matrix().cols(); ++c) cols.emplace_back(target.matrix().col(c));
      CHECK(ch.kraus().size() == d - 1 + oracle::rank(cols, 1e-10));
      for (int t = 0; t < 20; ++t) {
        const PureState psi = random_pure_state(d, rng);
        CHECK(max_abs(apply_operator(ch, psi.projector()) - formula_image(psi.amplitudes(), target)) < 1e-10);
      }
    }
}

TEST_CASE("off-diagonal inputs are annihilated and superpositions decohere") {
  Rng rng(2);
  for (std::size_t d = 2; d <= 4; ++d) {
    const Channel ch = build_counterexample({d, 3, admissible_target(d, 3, rng)});
    const auto n = static_cast<Eigen::Index>(d);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) CHECK(max_abs(apply_operator(ch, oracle::ket_bra(n, i, j))) < 1e-12);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      ComplexMatrix reference;
      for (int t = 0; t < 8; ++t) {
        const double theta = std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng);
        ComplexVector chi = ComplexVector::Zero(n);
        chi(i) = 1.0 / std::sqrt(2.0);
        chi(n - 1) = std::polar(1.0 / std::sqrt(2.0), theta);
        const ComplexMatrix out = apply_operator(ch, chi * chi.adjoint());
        if (t == 0) reference = out;
        CHECK(max_abs(out - reference) < 1e-10);
      }
    }
  }
}

TEST_CASE("parameter validation") {
  const DensityMatrix pure = DensityMatrix::from_pure(PureState::basis(2, 0));
  CHECK(code_of([&] { build_counterexample({2, 2, pure}); }) == ErrorCode::kTargetNotMixed);
  RealVector p(3);
  p << 0.0, 0.5, 0.5;
  CHECK(code_of([&] { build_counterexample({2, 3, DensityMatrix::diagonal(p)}); }) == ErrorCode::kNoOverlap);
  CHECK_NOTHROW(build_counterexample({3, 3, DensityMatrix::diagonal(p)}));
  CHECK(code_of([&] { build_counterexample({1, 2, DensityMatrix::maximally_mixed(2)}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { build_counterexample({2, 3, DensityMatrix::maximally_mixed(2)}); }) ==
        ErrorCode::kShapeMismatch);
}

TEST_CASE("implementing unitary matches the family") {
  Rng rng(3);
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::size_t d_fin = 2; d_fin <= 3; ++d_fin)
      for (int t = 0; t < 4; ++t) {
        const double a = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
        const Complex alpha = std::polar(std::sqrt(a), 1.3 * t);
        const Complex beta = std::polar(std::sqrt(1.0 - a), -0.4 * t);
        const Dilation dil = implementing_unitary(d, d_fin, alpha, beta);
        CHECK(dil.d_env() == 2);
        CHECK(is_unitary(dil.unitary(), 1e-10));
        const DensityMatrix target = implementing_unitary_target(d_fin, alpha, beta);
        CHECK(target.matrix()(0, 0).real() == doctest::Approx(std::norm(alpha)));
        CHECK(target.matrix()(1, 1).real() == doctest::Approx(std::norm(beta)));
        CHECK(distance(channel_from_dilation(dil), build_counterexample({d, d_fin, target})) < 1e-9);
      }
}

TEST_CASE("implementing unitary preconditions") {
  CHECK(code_of([] { implementing_unitary(2, 2, 1.0, 0.0); }) == ErrorCode::kZeroCoefficient);
  CHECK(code_of([] { implementing_unitary(2, 2, 0.0, 1.0); }) == ErrorCode::kZeroCoefficient);
  CHECK(code_of([] { implementing_unitary(2, 2, 0.5, 0.5); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("certificate at d = 3 uses the counting step") {
  const auto cert = certify_nonrealizable({3, 2, DensityMatrix::maximally_mixed(2)});
  CHECK(cert.claim == CertificateClaim::kNotRealizable);
  CHECK(cert.vectors_required == 4);
  CHECK(cert.dimension_available == 3);
  CHECK_FALSE(cert.d2_branch_used);
  CHECK(cert.decoherence_contradiction);
  CHECK(narrative_contains(cert, "4 > 3"));
  REQUIRE(cert.rank_counts.size() == 1);
  CHECK(cert.rank_counts[0].excluded);
}

TEST_CASE("certificate at d = 2 uses the overlap branch") {
  const auto cert = certify_nonrealizable({2, 2, DensityMatrix::maximally_mixed(2)});
  CHECK(cert.claim == CertificateClaim::kNotRealizable);
  CHECK(cert.d2_branch_used);
  CHECK(cert.decoherence_contradiction);
  CHECK(cert.vectors_required == 2);
  CHECK(cert.dimension_available == 2);
  CHECK_FALSE(cert.rank_counts[0].excluded);
  CHECK(narrative_contains(cert, "<0'|rho'|0'> = 0.5"));
}

TEST_CASE("certificate outside the family is inconclusive") {
  const auto pure = certify_nonrealizable({2, 2, DensityMatrix::from_pure(PureState::basis(2, 1))});
  CHECK(pure.claim == CertificateClaim::kInconclusive);
  CHECK(narrative_contains(pure, "target image must be mixed"));
  RealVector p(3);
  p << 0.0, 0.5, 0.5;
  const auto no_overlap = certify_nonrealizable({2, 3, DensityMatrix::diagonal(p)});
  CHECK(no_overlap.claim == CertificateClaim::kInconclusive);
}

TEST_CASE("certificate invariant across the family") {
  Rng rng(4);
  for (std::size_t d = 2; d <= 5; ++d)
    for (std::size_t d_fin = 2; d_fin <= 3; ++d_fin) {
      const auto cert = certify_nonrealizable({d, d_fin, admissible_target(d, d_fin, rng)});
      CHECK(cert.claim == CertificateClaim::kNotRealizable);
      CHECK(cert.rank_counts.size() == d_fin - 1);
      bool all_counted = true;
      for (const auto& rc : cert.rank_counts) {
        CHECK(rc.vectors_required == rc.rank * (d - 1));
        CHECK(rc.dimension_available == d);
        all_counted = all_counted && rc.excluded;
      }
      CHECK((all_counted || (d == 2 && cert.decoherence_contradiction && cert.d2_branch_used)));
      CHECK(cert.d2_branch_used == (d == 2));
    }
}

TEST_CASE("family membership of arbitrary channels") {
  Rng rng(5);
  SUBCASE("rotated family member is recognized") {
    const DensityMatrix target = admissible_target(3, 3, rng);
    const Channel ch = build_counterexample({3, 3, target});
    const ComplexMatrix v = haar_unitary(3, rng);
    std::vector<ComplexMatrix> ops;
    for (const auto& e : ch.kraus().operators()) ops.push_back(v * e);
    const Channel rotated = Channel::from_kraus(KrausSet::create(3, 3, ops));
    const FamilyMatch m = match_counterexample_family(rotated);
    REQUIRE(m.params.has_value());
    CHECK(std::abs(purity(m.params->rho_target) - purity(target)) < 1e-9);
    CHECK(certify_nonrealizable(*m.params).claim == CertificateClaim::kNotRealizable);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> found(m.params->rho_target.matrix());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> original(target.matrix());
    CHECK((found.eigenvalues() - original.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("identity is not in the family") {
    CHECK_FALSE(match_counterexample_family(identity_channel(2)).params.has_value());
  }
  SUBCASE("random channel is not in the family") {
    CHECK_FALSE(match_counterexample_family(random_channel(3, 2, rng)).params.has_value());
  }
}
