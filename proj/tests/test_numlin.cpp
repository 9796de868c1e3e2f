#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coherence/numlin.hpp"
#include "coherence/random.hpp"

using namespace coherence;

namespace {

Matrixd ones_half() {
  Matrixd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

Matrixd pauli_x() {
  Matrixd m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrixd pauli_z() {
  Matrixd m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrixd diag2(double a, double b) {
  Matrixd m = Matrixd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Matrixd random_hermitian(int dim, std::uint64_t seed, double scale = 1.0) {
  const Matrixd g = scale * gen_ginibre(dim, dim, seed);
  return ((g + g.adjoint()) / 2.0).eval();
}

}  // namespace

TEST_CASE("hermitize symmetrizes near-Hermitian input and rejects the rest") {
  Matrixd m = diag2(1.0, 2.0);
  m(0, 1) = Complexd(1e-10, 1e-10);
  const Matrixd h = hermitize(m);
  CHECK((h - h.adjoint()).norm() == doctest::Approx(0.0));

  Matrixd bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitize(bad), ValidationError);
  CHECK_THROWS_AS(hermitize(Matrixd::Zero(2, 3)), ValidationError);
}

TEST_CASE("spectral_decompose on the identity merges the full spectrum") {
  const auto form = spectral_decompose(Matrixd::Identity(2, 2));
  REQUIRE(form.outcomes() == 1);
  CHECK(form.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(form.multiplicities[0] == 2);
  CHECK((form.projectors[0] - Matrixd::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("spectral_decompose keeps an already diagonal matrix") {
  const auto form = spectral_decompose(diag2(3.0, 1.0));
  REQUIRE(form.outcomes() == 2);
  CHECK(form.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(form.eigenvalues(1) == doctest::Approx(1.0));
  CHECK((form.projectors[0] - diag2(1.0, 0.0)).norm() < 1e-14);
  CHECK((form.projectors[1] - diag2(0.0, 1.0)).norm() < 1e-14);
}

TEST_CASE("spectral_decompose of the plus projector") {
  // Characteristic polynomial of (1/2)[[1,1],[1,1]] gives eigenvalues 1 and 0
  // with eigenvectors (1,1)/sqrt(2) and (1,-1)/sqrt(2).
  const auto form = spectral_decompose(ones_half());
  REQUIRE(form.outcomes() == 2);
  CHECK(form.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(form.eigenvalues(1) == doctest::Approx(0.0));
  CHECK((form.projectors[0] - ones_half()).norm() < 1e-14);
  Matrixd minus(2, 2);
  minus << 0.5, -0.5, -0.5, 0.5;
  CHECK((form.projectors[1] - minus).norm() < 1e-14);
}

TEST_CASE("clustered eigenvalues collapse to one projector") {
  const auto form = spectral_decompose(diag2(1.0, 1.0 + 1e-9));
  REQUIRE(form.outcomes() == 1);
  CHECK(form.multiplicities[0] == 2);
}

TEST_CASE("spectral reconstruction over random Hermitian matrices") {
  for (int dim = 2; dim <= 8; ++dim) {
    for (int t = 0; t < 25; ++t) {
      const Matrixd m = random_hermitian(dim, derive_seed(901, dim * 100 + t), 2.0);
      const auto form = spectral_decompose(m);
      CHECK((form.reconstruct() - m).norm() <= 1e-10 * std::max(1.0, m.norm()));

      // projectors orthogonal and complete
      Matrixd sum = Matrixd::Zero(dim, dim);
      for (const auto& q : form.projectors) sum += q;
      CHECK((sum - Matrixd::Identity(dim, dim)).norm() < 1e-12);
      for (size_t i = 0; i < form.projectors.size(); ++i) {
        for (size_t j = i + 1; j < form.projectors.size(); ++j) {
          CHECK((form.projectors[i] * form.projectors[j]).norm() < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("support_projector basics") {
  CHECK((support_projector(diag2(0.5, 0.5)) - Matrixd::Identity(2, 2)).norm() < 1e-14);
  CHECK((support_projector(diag2(1.0, 0.0)) - diag2(1.0, 0.0)).norm() < 1e-14);
  CHECK((support_projector(ones_half()) - ones_half()).norm() < 1e-14);
  CHECK_THROWS_AS(support_projector(diag2(1.0, -0.1)), ValidationError);
}

TEST_CASE("support absorbency on random psd matrices") {
  for (int t = 0; t < 40; ++t) {
    const int dim = 2 + t % 6;
    const int rank = 1 + t % dim;
    const auto rho = gen_state(dim, rank, derive_seed(902, t));
    const Matrixd q = support_projector(rho.matrix());
    CHECK((q * rho.matrix() * q - rho.matrix()).norm() < 1e-10);
    CHECK((q * q - q).norm() < 1e-12);
  }
}

TEST_CASE("extended_log applies log on the support and zero elsewhere") {
  CHECK(extended_log(Matrixd::Identity(2, 2)).norm() < 1e-14);
  const Matrixd e0 = extended_log(diag2(std::exp(1.0), 0.0));
  CHECK((e0 - diag2(1.0, 0.0)).norm() < 1e-13);

  Matrixd half3 = Matrixd::Zero(3, 3);
  half3(0, 0) = 0.5;
  half3(1, 1) = 0.5;
  const Matrixd log3 = extended_log(half3);
  Matrixd expected = Matrixd::Zero(3, 3);
  expected(0, 0) = -std::log(2.0);
  expected(1, 1) = -std::log(2.0);
  CHECK((log3 - expected).norm() < 1e-13);
}

TEST_CASE("matrix_power on the spec cases") {
  CHECK((matrix_power(Matrixd::Identity(2, 2), 0.5) - Matrixd::Identity(2, 2)).norm() < 1e-14);
  CHECK((matrix_power(diag2(4.0, 0.0), 0.5) - diag2(2.0, 0.0)).norm() < 1e-13);
  CHECK((matrix_power(ones_half(), 0.5) - ones_half()).norm() < 1e-13);
  CHECK_THROWS_AS(matrix_power(Matrixd::Identity(2, 2), 0.0), std::domain_error);
  CHECK_THROWS_AS(matrix_power(Matrixd::Identity(2, 2), 1.0), std::domain_error);
  CHECK_THROWS_AS(matrix_power(Matrixd::Identity(2, 2), -0.3), std::domain_error);
}

TEST_CASE("power consistency M^p M^(1-p) = M on random psd matrices") {
  for (int t = 0; t < 40; ++t) {
    const int dim = 2 + t % 6;
    const auto rho = gen_state(dim, dim, derive_seed(903, t));
    Prng rng(derive_seed(904, t));
    const double p = rng.uniform(0.05, 0.95);
    const Matrixd prod = matrix_power(rho.matrix(), p) * matrix_power(rho.matrix(), 1.0 - p);
    CHECK((prod - rho.matrix()).norm() <= 1e-9);
  }
}

TEST_CASE("commutator algebra") {
  CHECK(commutator(diag2(1.0, 0.0), diag2(0.0, 1.0)).norm() == doctest::Approx(0.0));
  CHECK(commutator_norm(diag2(2.0, 3.0), Matrixd::Identity(2, 2)) == doctest::Approx(0.0));

  // [sigma_x, sigma_z] = -2i sigma_y by direct 2x2 arithmetic.
  const Matrixd c = commutator(pauli_x(), pauli_z());
  Matrixd expected(2, 2);
  expected << 0.0, Complexd(0.0, 2.0), Complexd(0.0, -2.0), 0.0;
  CHECK((c - expected).norm() < 1e-14);
  CHECK(commutator_norm(pauli_x(), pauli_z()) == doctest::Approx(2.8284271247461903));

  CHECK_THROWS_AS(commutator(Matrixd::Identity(2, 2), Matrixd::Identity(3, 3)), ValidationError);
}

TEST_CASE("extended_log satisfies the orthogonal-decomposition identity") {
  // log_e(sigma) = sum' log(w_k) Q_k + sum' log_e(sigma_k) for
  // sigma = sum w_k sigma_k over orthogonal blocks.
  for (int t = 0; t < 30; ++t) {
    const int dim = 4 + t % 4;
    const int split = 1 + t % (dim - 1);
    const Matrixd u = gen_unitary(dim, derive_seed(905, t));
    const auto left = u.leftCols(split);
    const auto right = u.rightCols(dim - split);
    const Matrixd s1 =
        left * gen_state(split, split, derive_seed(906, t)).matrix() * left.adjoint();
    const Matrixd s2 = right * gen_state(dim - split, dim - split, derive_seed(907, t)).matrix() *
                       right.adjoint();
    Prng rng(derive_seed(908, t));
    const double w = rng.uniform(0.2, 0.8);

    const Matrixd sigma = w * s1 + (1.0 - w) * s2;
    const Matrixd rhs = std::log(w) * support_projector(s1) +
                        std::log(1.0 - w) * support_projector(s2) + extended_log(s1) +
                        extended_log(s2);
    CHECK((extended_log(sigma) - rhs).norm() <= 1e-8);
  }
}
