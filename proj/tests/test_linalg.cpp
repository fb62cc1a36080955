#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fbh/linalg.hpp"
#include "fbh/random.hpp"
#include "helpers.hpp"

using namespace fbh;
using namespace fbhtest;

TEST_CASE("signature validation") {
  CHECK_NOTHROW(HermitianSignature{1, 1}.validate());
  CHECK_NOTHROW(HermitianSignature{3, 0}.validate());
  CHECK_THROWS_AS((HermitianSignature{0, 0}.validate()), Error);
  CHECK_THROWS_AS((HermitianSignature{-1, 2}.validate()), Error);
}

TEST_CASE("hform_eval basic values") {
  const HermitianSignature sig{1, 1};
  CVector x(2);
  x << Complex{1.25, 0.0}, Complex{0.75, 0.0};
  // 1.25^2 - 0.75^2 = 1.5625 - 0.5625
  CHECK(hform_eval(sig, x) == doctest::Approx(1.0).epsilon(1e-14));

  // brute-force cross-check on random vectors
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianSignature s{1 + static_cast<int>(rng.uniform(0, 3)),
                               static_cast<int>(rng.uniform(0, 3))};
    const CVector y = rng.cgaussian_vector(s.dim());
    double brute = 0.0;
    for (int i = 0; i < s.dim(); ++i)
      brute += (i < s.p ? 1.0 : -1.0) * std::norm(y(i));
    CHECK(hform_eval(s, y) == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("is_h_unitary: identity and Lorentz-type examples") {
  for (int n = 1; n <= 5; ++n)
    CHECK(is_h_unitary(CMatrix::Identity(n + 1, n + 1),
                       HermitianSignature{1, n}));

  // alpha = 0.6, beta = 0.8: the Moebius block [[1/b, a/b], [a/b, 1/b]]
  CMatrix m(2, 2);
  m << Complex{1.25, 0.0}, Complex{0.75, 0.0}, Complex{0.75, 0.0},
      Complex{1.25, 0.0};
  const HermitianSignature sig{1, 1};
  CHECK(is_h_unitary(m, sig));
  const CMatrix j = signature_matrix(sig);
  CHECK(mat_gap(m * j * m.adjoint(), j) < 1e-14);

  // scaled copy breaks the form
  CHECK_FALSE(is_h_unitary(2.0 * m, sig));
}

TEST_CASE("is_h_unitary: random indefinite-unitary words") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const HermitianSignature sig{1 + static_cast<int>(seed % 3),
                                 1 + static_cast<int>(seed % 2)};
    const CMatrix g = random_h_unitary(sig, 100 + seed);
    CHECK(is_h_unitary(g, sig, 1e-10));
    CHECK(h_unitary_residual(g, sig) < 1e-12);
  }
  // ordinary unitarity is the q = 0 special case
  Rng rng(3);
  CHECK(is_h_unitary(rng.unitary(4), HermitianSignature{4, 0}));
}

TEST_CASE("unitary_complete reproduces the input columns exactly") {
  CMatrix col = CMatrix::Zero(3, 1);
  col(0, 0) = 1.0;
  const CMatrix u = unitary_complete(col);
  CHECK(u.rows() == 3);
  CHECK(u.cols() == 3);
  CHECK(mat_gap(u.col(0), col) == 0.0);
  CHECK(is_h_unitary(u, HermitianSignature{3, 0}));

  CMatrix col2 = CMatrix::Zero(2, 1);
  col2(1, 0) = 1.0;
  const CMatrix u2 = unitary_complete(col2);
  CHECK(mat_gap(u2.col(0), col2) == 0.0);
  CHECK(h_unitary_residual(u2, HermitianSignature{2, 0}) < 1e-12);
}

TEST_CASE("unitary_complete on random orthonormal pairs") {
  Rng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const CMatrix full = rng.unitary(4);
    const CMatrix pair = full.leftCols(2);
    const CMatrix u = unitary_complete(pair);
    CHECK(mat_gap(u.leftCols(2), pair) == 0.0);
    CHECK(is_h_unitary(u, HermitianSignature{4, 0}));
  }
}

TEST_CASE("unitary_complete rejects bad input") {
  CMatrix wide = CMatrix::Zero(2, 3);
  CHECK_THROWS_AS(unitary_complete(wide), Error);

  CMatrix skew(3, 2);
  skew << Complex{1, 0}, Complex{0.5, 0}, Complex{0, 0}, Complex{1, 0},
      Complex{0, 0}, Complex{0, 0};
  try {
    unitary_complete(skew);
    FAIL("expected NotOrthonormal");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotOrthonormal);
  }
}

TEST_CASE("min_right_singular: diagonal and constructed nullspaces") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 2.0;
  const CVector v = min_right_singular(d);
  CVector e3 = CVector::Zero(3);
  e3(2) = 1.0;
  CHECK(vec_gap(v, e3) < 1e-14);

  // M = A (I - x x*): x spans the nullspace, recovered up to phase
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    CVector x = rng.cgaussian_vector(4);
    x /= x.norm();
    const CMatrix proj = CMatrix::Identity(4, 4) - x * x.adjoint();
    const CMatrix m = rng.cgaussian_matrix(9, 4) * proj;
    const CVector got = min_right_singular(m);
    CHECK(std::abs(std::abs(got.dot(x)) - 1.0) < 1e-10);
  }
}

TEST_CASE("min_right_singular: ambiguity detection") {
  CMatrix d = CMatrix::Zero(4, 4);
  d(0, 0) = 3.0;
  d(1, 1) = 2.0;  // two vanishing singular values
  const SmallestSingular info = min_right_singular_info(d);
  CHECK(info.ambiguous);
  try {
    min_right_singular(d);
    FAIL("expected AmbiguousFit");
  } catch (const Error& e) {
    CHECK(e.code() == Err::AmbiguousFit);
  }

  // rows < cols is a hard error
  CHECK_THROWS_AS(min_right_singular(CMatrix::Zero(2, 3)), Error);
}

TEST_CASE("min_right_singular reports the spectral gap") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 5.0;
  d(1, 1) = 1.0;
  d(2, 2) = 0.25;
  const SmallestSingular info = min_right_singular_info(d);
  CHECK(info.sigma_min == doctest::Approx(0.25));
  CHECK(info.sigma_next == doctest::Approx(1.0));
  CHECK_FALSE(info.ambiguous);
}

TEST_CASE("phase_canonicalize") {
  CVector v(2);
  v << Complex{0.0, 0.0}, Complex{0.0, -2.0};
  phase_canonicalize(v);
  CHECK(vec_gap(v, (CVector(2) << Complex{0, 0}, Complex{2, 0}).finished()) <
        1e-15);

  // idempotent, modulus-preserving, largest entry real positive
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix m = rng.cgaussian_matrix(3, 3);
    const CMatrix before = m;
    phase_canonicalize(m);
    CHECK(mat_gap(m.cwiseAbs().cast<Complex>(),
                  before.cwiseAbs().cast<Complex>()) < 1e-12);
    CMatrix again = m;
    phase_canonicalize(again);
    CHECK(mat_gap(again, m) < 1e-12);
    Eigen::Index r, c;
    m.cwiseAbs().maxCoeff(&r, &c);
    CHECK(m(r, c).real() > 0.0);
    CHECK(std::abs(m(r, c).imag()) < 1e-12 * std::abs(m(r, c)));
  }

  CVector zero = CVector::Zero(3);
  CHECK_NOTHROW(phase_canonicalize(zero));
  CHECK(zero.norm() == 0.0);
}

TEST_CASE("rng determinism and unitarity") {
  Rng a(123), b(123);
  CHECK(mat_gap(a.cgaussian_matrix(4, 4), b.cgaussian_matrix(4, 4)) == 0.0);
  const CMatrix u = a.unitary(5);
  CHECK(is_h_unitary(u, HermitianSignature{5, 0}));
  Rng c(124);
  CHECK(mat_gap(Rng(123).unitary(3), c.unitary(3)) > 1e-3);
}
