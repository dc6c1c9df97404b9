#include <doctest.h>

#include <cmath>

#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"
#include "biortho/rng.hpp"
#include "support.hpp"

using namespace biortho;
namespace ts = testsupport;

TEST_SUITE("numerics") {

TEST_CASE("hermitian_eig matches the 2x2 closed form") {
  ComplexMatrix m(2, 2);
  m << 2.0, 1.0, 1.0, 1.0;
  const HermitianEig eig = hermitian_eig(m);

  const auto [low, high] = ts::sym2x2_eigenvalues(2.0, 1.0, 1.0);
  CHECK(eig.eigenvalues(0) == doctest::Approx(low).epsilon(1e-14));
  CHECK(eig.eigenvalues(1) == doctest::Approx(high).epsilon(1e-14));
  // Frozen golden-ratio values as an extra anchor on the oracle itself.
  CHECK(low == doctest::Approx(ts::kGoldenSqLow).epsilon(1e-15));
  CHECK(high == doctest::Approx(ts::kGoldenSqHigh).epsilon(1e-15));

  CHECK(identity_defect(eig.eigenvectors.adjoint() * eig.eigenvectors) <
        1e-14);
  const ComplexMatrix recon = eig.eigenvectors *
                              eig.eigenvalues.asDiagonal() *
                              eig.eigenvectors.adjoint();
  CHECK(frobenius(recon - m) < 1e-14);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);

  // A defect inside the tolerance is symmetrized away, not rejected.
  ComplexMatrix nearly(2, 2);
  nearly << 1.0, Complex(0.5, 1e-13), Complex(0.5, -1e-13 + 1e-14), 2.0;
  CHECK_NOTHROW(hermitian_eig(nearly, 1e-10));
}

TEST_CASE("hermitian_eig property: random Hermitian reconstruction") {
  for (Index d : {2, 5, 16}) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(d)));
      const ComplexMatrix g = rng.gaussian_matrix(d, d);
      const ComplexMatrix m = g + g.adjoint().eval();
      const HermitianEig eig = hermitian_eig(m);

      for (Index i = 0; i + 1 < d; ++i) {
        CHECK(eig.eigenvalues(i) <= eig.eigenvalues(i + 1));
      }
      CHECK(identity_defect(eig.eigenvectors.adjoint() * eig.eigenvectors) <
            1e-13 * static_cast<double>(d));
      const ComplexMatrix recon = eig.eigenvectors *
                                  eig.eigenvalues.asDiagonal() *
                                  eig.eigenvectors.adjoint();
      CHECK(frobenius(recon - m) <=
            1e-12 * static_cast<double>(d) * frobenius(m));
    }
  }
}

TEST_CASE("sqrtm_psd on a diagonal and its idempotence chain") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 4.0;
  m(2, 2) = 9.0;
  const ComplexMatrix root = sqrtm_psd(m);
  CHECK(root(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(root(1, 1).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(root(2, 2).real() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(max_abs(root - root.adjoint().eval()) == 0.0); // exactly Hermitian

  // sqrtm_psd(R^2) = R for random PSD R.
  for (std::uint64_t seed : {4ull, 5ull}) {
    Rng rng(seed);
    const ComplexMatrix g = rng.gaussian_matrix(6, 6);
    const ComplexMatrix r = sqrtm_psd(g * g.adjoint());
    const ComplexMatrix again = sqrtm_psd(r * r);
    CHECK(frobenius(again - r) <= 1e-10 * 6.0 * frobenius(r));
  }
}

TEST_CASE("sqrtm_psd clamps rounding negatives and rejects real ones") {
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.0;
  negative(1, 1) = -1.0;
  CHECK_THROWS_AS(sqrtm_psd(negative), NotPSD);

  // Rotate diag(1, -1e-16) so the tiny negative is not axis-aligned; it sits
  // inside the clamping floor and must be treated as zero.
  const double c = std::cos(0.3), s = std::sin(0.3);
  ComplexMatrix w(2, 2);
  w << c, -s, s, c;
  ComplexMatrix tiny = ComplexMatrix::Zero(2, 2);
  tiny(0, 0) = 1.0;
  tiny(1, 1) = -1e-16;
  const ComplexMatrix root = sqrtm_psd(w * tiny * w.adjoint());
  const HermitianEig eig = hermitian_eig(root);
  CHECK(eig.eigenvalues(0) >= 0.0);
  CHECK(eig.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("svd of the golden matrix has golden-ratio singular values") {
  ComplexMatrix m(2, 2);
  m << 1.0, 1.0, 0.0, 1.0;
  const Svd dec = svd(m);
  CHECK(dec.singular_values(0) ==
        doctest::Approx(ts::kGoldenRatio).epsilon(1e-14));
  CHECK(dec.singular_values(1) ==
        doctest::Approx(ts::kInvGoldenRatio).epsilon(1e-14));
  CHECK(identity_defect(dec.u.adjoint() * dec.u) < 1e-14);
  CHECK(identity_defect(dec.v.adjoint() * dec.v) < 1e-14);
}

TEST_CASE("svd property: singular value product equals |det|") {
  for (Index d : {2, 4, 8}) {
    for (std::uint64_t seed : {7ull, 8ull}) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(d)));
      const ComplexMatrix m = rng.gaussian_matrix(d, d);
      const Svd dec = svd(m);
      double product = 1.0;
      for (Index i = 0; i < d; ++i) {
        CHECK(dec.singular_values(i) >= 0.0);
        if (i + 1 < d) {
          CHECK(dec.singular_values(i) >= dec.singular_values(i + 1));
        }
        product *= dec.singular_values(i);
      }
      const double det_mag = std::abs(ts::determinant(m));
      CHECK(product == doctest::Approx(det_mag).epsilon(1e-8));
    }
  }
}

TEST_CASE("polar_left factors and round-trips") {
  Rng rng(11);
  const ComplexMatrix m = rng.gaussian_matrix(5, 5);
  const PolarDecomposition polar = polar_left(m);

  CHECK(identity_defect(polar.u.adjoint() * polar.u) < 1e-12 * 5);
  CHECK(hermitian_defect(polar.h) == 0.0);
  CHECK(frobenius(polar.u * polar.h - m) <= 1e-11 * 5 * frobenius(m));
  // h_eigenvalues are the singular values of m (independent SVD route).
  const Svd dec = svd(m);
  for (Index i = 0; i < 5; ++i) {
    CHECK(polar.h_eigenvalues(i) ==
          doctest::Approx(dec.singular_values(4 - i)).epsilon(1e-10));
  }
}

TEST_CASE("polar_left round-trip across conditioning up to 1e6") {
  // Spread singular values geometrically via diag scaling of a random basis.
  for (double kappa : {1e2, 1e4, 1e6}) {
    const Index d = 8;
    const ComplexMatrix q1 = random_unitary(d, 21);
    const ComplexMatrix q2 = random_unitary(d, 22);
    RealVector s(d);
    for (Index i = 0; i < d; ++i) {
      s(i) = std::pow(kappa, static_cast<double>(i) / (d - 1));
    }
    const ComplexMatrix m = q1 * s.asDiagonal() * q2;
    const PolarDecomposition polar = polar_left(m);
    CHECK(frobenius(polar.u * polar.h - m) <=
          1e-10 * static_cast<double>(d) * frobenius(m));
  }
}

TEST_CASE("polar_left rejects singular input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  CHECK_THROWS_AS(polar_left(m), SingularInput);
  CHECK_THROWS_AS(polar_left(ComplexMatrix::Zero(3, 3)), SingularInput);
}

TEST_CASE("random_unitary is unitary and deterministic") {
  const ComplexMatrix u = random_unitary(8, 42);
  CHECK(identity_defect(u.adjoint() * u) <= 1e-12);

  const ComplexMatrix again = random_unitary(8, 42);
  CHECK(max_abs(u - again) == 0.0); // bitwise reproducible

  const ComplexMatrix other = random_unitary(8, 43);
  CHECK(max_abs(u - other) > 1e-3); // different stream actually differs
}

TEST_CASE("eigenvalues_general sorts and respects similarity") {
  ComplexMatrix nilpotent(2, 2);
  nilpotent << 0.0, 1.0, 0.0, 0.0;
  const GeneralEig nil = eigenvalues_general(nilpotent);
  CHECK(std::abs(nil.eigenvalues(0)) < 1e-14);
  CHECK(std::abs(nil.eigenvalues(1)) < 1e-14);

  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(0, 0) = 3.0;
  diag(1, 1) = 1.0;
  diag(2, 2) = 2.0;
  const GeneralEig sorted = eigenvalues_general(diag);
  CHECK(sorted.eigenvalues(0).real() == doctest::Approx(1.0));
  CHECK(sorted.eigenvalues(1).real() == doctest::Approx(2.0));
  CHECK(sorted.eigenvalues(2).real() == doctest::Approx(3.0));

  // Similarity invariance: G M G^{-1} has the same spectrum.
  Rng rng(33);
  const ComplexMatrix m = rng.gaussian_matrix(5, 5);
  const ComplexMatrix g =
      ComplexMatrix::Identity(5, 5) + 0.4 * rng.gaussian_matrix(5, 5) / 5.0;
  Eigen::PartialPivLU<ComplexMatrix> lu(g);
  const ComplexMatrix similar =
      g * m * lu.solve(ComplexMatrix::Identity(5, 5));
  const GeneralEig a = eigenvalues_general(m);
  const GeneralEig b = eigenvalues_general(similar);
  for (Index i = 0; i < 5; ++i) {
    CHECK(std::abs(a.eigenvalues(i) - b.eigenvalues(i)) < 1e-10);
  }
}

TEST_CASE("rng streams are deterministic and distinct per seed") {
  Rng a(99), b(99), c(100);
  for (int i = 0; i < 16; ++i) {
    const double va = a.gaussian();
    CHECK(va == b.gaussian());
    CHECK(std::isfinite(va));
  }
  // Different seed should give a different stream.
  Rng a2(99);
  bool any_diff = false;
  for (int i = 0; i < 16; ++i) {
    any_diff |= (a2.gaussian() != c.gaussian());
  }
  CHECK(any_diff);
}

} // TEST_SUITE
