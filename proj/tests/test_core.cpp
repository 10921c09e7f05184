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

#include "oracles.hpp"
#include "qop/core.hpp"
#include "qop/random.hpp"

using namespace qop;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ComplexMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng) { return ginibre(r, c, rng); }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected qop::Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("tensor of identities is identity") {
  CHECK(max_abs(tensor(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) -
                ComplexMatrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("tensor of basis projectors") {
  const ComplexMatrix t = tensor(oracle::ket_bra(2, 0, 0), oracle::ket_bra(2, 1, 1));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  CHECK(max_abs(t - expected) == 0.0);
}

TEST_CASE("X tensor I sends |00> to |10>") {
  ComplexVector ket00 = ComplexVector::Zero(4);
  ket00(0) = 1.0;
  const ComplexVector out = tensor(oracle::pauli_x(), ComplexMatrix::Identity(2, 2)) * ket00;
  ComplexVector ket10 = ComplexVector::Zero(4);
  ket10(2) = 1.0;
  CHECK((out - ket10).norm() == 0.0);
}

TEST_CASE("tensor matches index-loop oracle") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix a = random_matrix(2 + t % 3, 1 + t % 2, rng);
    const ComplexMatrix b = random_matrix(3, 2 + t % 2, rng);
    CHECK(max_abs(tensor(a, b) - oracle::kron(a, b)) < 1e-14);
  }
}

TEST_CASE("tensor overflow") {
  CHECK(code_of([] { tensor(ComplexMatrix::Identity(65, 65), ComplexMatrix::Identity(64, 64)); }) ==
        ErrorCode::kDimensionOverflow);
  CHECK(code_of([] { tensor(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3), 8); }) ==
        ErrorCode::kDimensionOverflow);
  CHECK_NOTHROW(tensor(ComplexMatrix::Identity(64, 64), ComplexMatrix::Identity(64, 64)));
}

TEST_CASE("error messages carry the canonical name") {
  try {
    tensor(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3), 8);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).rfind("dimension overflow", 0) == 0);
  }
  CHECK(std::string(error_name(ErrorCode::kShapeMismatch)) == "shape mismatch");
  CHECK(std::string(error_name(ErrorCode::kNoOverlap)) == "d=2 requires overlap with |0'>");
}

TEST_CASE("partial trace of a product state") {
  Rng rng(3);
  const DensityMatrix a = random_density_matrix(2, rng);
  const DensityMatrix b = random_density_matrix(3, rng);
  const ComplexMatrix ab = tensor(a.matrix(), b.matrix());
  CHECK(max_abs(partial_trace(ab, {2, 3}, {0}) - a.matrix()) < 1e-14);
  CHECK(max_abs(partial_trace(ab, {2, 3}, {1}) - b.matrix()) < 1e-14);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix bell = phi * phi.adjoint();
  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(partial_trace(bell, {2, 2}, {1}) - half) < 1e-15);
  CHECK(max_abs(partial_trace(bell, {2, 2}, {0}) - half) < 1e-15);
}

TEST_CASE("partial trace keeping everything is the identity map") {
  Rng rng(5);
  const ComplexMatrix m = random_matrix(3, 3, rng);
  CHECK(max_abs(partial_trace(m, {3}, {0}) - m) == 0.0);
}

TEST_CASE("partial trace matches the index-sum oracle on three factors") {
  Rng rng(8);
  const std::vector<std::size_t> dims{2, 3, 2};
  const ComplexMatrix m = random_matrix(12, 12, rng);
  const std::vector<std::vector<std::size_t>> keeps{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  for (const auto& keep : keeps) {
    std::vector<bool> mask(3, false);
    for (auto k : keep) mask[k] = true;
    CHECK(max_abs(partial_trace(m, dims, keep) - oracle::partial_trace(m, dims, mask)) < 1e-13);
  }
}

TEST_CASE("partial trace errors") {
  const ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  CHECK(code_of([&] { partial_trace(m, {2, 3}, {0}); }) == ErrorCode::kShapeMismatch);
  CHECK(code_of([&] { partial_trace(ComplexMatrix::Identity(4, 3), {2, 2}, {0}); }) ==
        ErrorCode::kShapeMismatch);
  CHECK(code_of([&] { partial_trace(m, {2, 2}, {2}); }) == ErrorCode::kBadSubsystemIndex);
  CHECK(code_of([&] { partial_trace(m, {2, 2}, {}); }) == ErrorCode::kBadSubsystemIndex);
}

TEST_CASE("partial trace is linear and trace preserving") {
  Rng rng(21);
  const std::vector<std::size_t> dims{2, 3};
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_matrix(6, 6, rng);
    const ComplexMatrix b = random_matrix(6, 6, rng);
    const Complex alpha(0.3 * t, -1.1), beta(-0.7, 0.2 * t);
    for (std::size_t keep = 0; keep < 2; ++keep) {
      const ComplexMatrix lhs = partial_trace(alpha * a + beta * b, dims, {keep});
      const ComplexMatrix rhs = alpha * partial_trace(a, dims, {keep}) + beta * partial_trace(b, dims, {keep});
      CHECK(max_abs(lhs - rhs) < 1e-10);
      CHECK(std::abs(partial_trace(a, dims, {keep}).trace() - a.trace()) < 1e-12);
    }
  }
}

TEST_CASE("tensor is associative") {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix a = random_matrix(2, 3, rng);
    const ComplexMatrix b = random_matrix(1 + t % 3, 2, rng);
    const ComplexMatrix c = random_matrix(2, 2, rng);
    CHECK(max_abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))) < 1e-13);
  }
}

TEST_CASE("partial trace of a tensor product scales by the traced trace") {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_matrix(3, 3, rng);
    const ComplexMatrix b = random_matrix(2, 2, rng);
    CHECK(max_abs(partial_trace(tensor(a, b), {3, 2}, {0}) - b.trace() * a) < 1e-10);
  }
}

TEST_CASE("eig_hermitian examples") {
  SUBCASE("identity") {
    const auto e = eig_hermitian(ComplexMatrix::Identity(2, 2));
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(1) == doctest::Approx(1.0));
    CHECK(max_abs(e.vectors - ComplexMatrix::Identity(2, 2)) < 1e-14);
  }
  SUBCASE("diagonal") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 0.3;
    m(1, 1) = 0.7;
    const auto e = eig_hermitian(m);
    CHECK(e.values(0) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(e.values(1) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(std::abs(e.vectors(1, 0) - 1.0) < 1e-14);
    CHECK(std::abs(e.vectors(0, 1) - 1.0) < 1e-14);
  }
  SUBCASE("bit flip") {
    const auto e = eig_hermitian(oracle::pauli_x());
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(1) == doctest::Approx(-1.0));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(e.vectors(0, 0) - s) < 1e-14);
    CHECK(std::abs(e.vectors(1, 0) - s) < 1e-14);
    CHECK(std::abs(e.vectors(0, 1) - s) < 1e-14);
    CHECK(std::abs(e.vectors(1, 1) + s) < 1e-14);
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK(code_of([&] { eig_hermitian(m); }) == ErrorCode::kNotHermitian);
}

TEST_CASE("eig_hermitian reconstruction, ordering and phase convention") {
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 6);
    const ComplexMatrix h = random_hermitian(n, rng);
    const auto e = eig_hermitian(h);
    const ComplexMatrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK((rec - h).norm() < 1e-9);
    CHECK(is_unitary(e.vectors, 1e-10));
    for (Eigen::Index k = 1; k < e.values.size(); ++k) CHECK(e.values(k - 1) >= e.values(k));
    for (Eigen::Index c = 0; c < e.vectors.cols(); ++c) {
      Eigen::Index first = 0;
      while (std::abs(e.vectors(first, c)) < 1e-12) ++first;
      CHECK(std::abs(e.vectors(first, c).imag()) < 1e-12);
      CHECK(e.vectors(first, c).real() > 0.0);
    }
  }
}

TEST_CASE("eig_hermitian is deterministic") {
  Rng rng(13);
  const ComplexMatrix h = random_hermitian(5, rng);
  const auto a = eig_hermitian(h);
  const auto b = eig_hermitian(h);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);
}

TEST_CASE("purity examples") {
  CHECK(purity(DensityMatrix::from_pure(PureState::basis(2, 0))) == doctest::Approx(1.0));
  CHECK(purity(DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));
  RealVector p(2);
  p << 0.7, 0.3;
  CHECK(purity(DensityMatrix::diagonal(p)) == doctest::Approx(0.7 * 0.7 + 0.3 * 0.3).epsilon(1e-14));
  CHECK(is_pure(DensityMatrix::from_pure(PureState::basis(3, 2))));
  CHECK_FALSE(is_pure(DensityMatrix::diagonal(p)));
}

TEST_CASE("purity lies in [1/dim, 1]") {
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 5);
    const double p = purity(random_density_matrix(n, rng));
    CHECK(p >= 1.0 / static_cast<double>(n) - 1e-12);
    CHECK(p <= 1.0 + 1e-12);
  }
}

TEST_CASE("state validation") {
  ComplexVector v(2);
  v << 1.0, 1.0;
  CHECK(code_of([&] { PureState s(v); }) == ErrorCode::kInvalidState);
  CHECK(PureState::normalized(v).amplitudes().norm() == doctest::Approx(1.0));
  CHECK(code_of([] { PureState::normalized(ComplexVector::Zero(3)); }) == ErrorCode::kInvalidState);

  ComplexMatrix not_unit_trace = ComplexMatrix::Identity(2, 2);
  CHECK(code_of([&] { DensityMatrix r(not_unit_trace); }) == ErrorCode::kInvalidState);
  ComplexMatrix not_psd = ComplexMatrix::Zero(2, 2);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK(code_of([&] { DensityMatrix r(not_psd); }) == ErrorCode::kInvalidState);
  ComplexMatrix not_herm = 0.5 * ComplexMatrix::Identity(2, 2);
  not_herm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{not_herm}, Error);
  ComplexMatrix nan = 0.5 * ComplexMatrix::Identity(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(DensityMatrix{nan}, Error);

  RealVector bad(2);
  bad << 0.6, 0.6;
  CHECK(code_of([&] { check_distribution(bad); }) == ErrorCode::kNotADistribution);
  bad << 1.2, -0.2;
  CHECK(code_of([&] { check_distribution(bad); }) == ErrorCode::kNotADistribution);
}

TEST_CASE("exp_i_hermitian and nearest_unitary produce unitaries") {
  Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix h = random_hermitian(4, rng);
    const ComplexMatrix u = exp_i_hermitian(h);
    CHECK(is_unitary(u, 1e-12));
    // d/dt at t=0 is iH; compare against a second-order expansion for small H.
    const ComplexMatrix small = 1e-4 * h;
    const ComplexMatrix series = ComplexMatrix::Identity(4, 4) + Complex(0, 1) * small - 0.5 * small * small;
    CHECK(max_abs(exp_i_hermitian(small) - series) < 1e-10);
    CHECK(is_unitary(nearest_unitary(u + 1e-6 * ginibre(4, 4, rng)), 1e-12));
  }
}
