#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fbh/aut.hpp"
#include "helpers.hpp"

using namespace fbh;
using namespace fbhtest;

namespace {

std::vector<DomainPoint> mixed_samples(const DomainParams& par, uint64_t seed,
                                       int count) {
  auto pts = sample_interior(par, seed, count / 2);
  const auto bnd = sample_boundary(par, seed + 1, count - count / 2);
  pts.insert(pts.end(), bnd.begin(), bnd.end());
  return pts;
}

}  // namespace

TEST_CASE("constructor validates the normal form") {
  Rng rng(1);
  CHECK_NOTHROW(FbhAut(rng.unitary(2), rng.unitary(1), rng.cgaussian_vector(2)));
  CMatrix not_unitary = 2.0 * CMatrix::Identity(2, 2);
  try {
    FbhAut(not_unitary, CMatrix::Identity(1, 1), CVector::Zero(2));
    FAIL("expected NotUnitary");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotUnitary);
  }
  CHECK_THROWS_AS(
      FbhAut(CMatrix::Identity(2, 2), CMatrix::Identity(1, 1), CVector::Zero(3)),
      Error);
}

TEST_CASE("identity acts trivially") {
  const DomainParams par{2, 2, 1.0};
  const FbhAut id = FbhAut::identity(2, 2);
  for (const auto& p : mixed_samples(par, 2, 20))
    CHECK(point_gap(apply(id, par, p), p) == 0.0);
}

TEST_CASE("twisted translation sends its designed boundary point to P") {
  // g with v = -z0, W = conj(phase), U = I maps (z0, phase * radius) to P
  const DomainParams par{2, 1, 0.9};
  Rng rng(5);
  const CVector z0 = rng.cgaussian_vector(2);
  const Complex phase = std::exp(kI * 0.77);
  DomainPoint q;
  q.z = z0;
  q.w = CVector::Constant(1, phase * std::exp(-0.5 * par.mu * z0.squaredNorm()));
  REQUIRE(classify(par, q) == Region::Boundary);

  const FbhAut g(CMatrix::Identity(2, 2),
                 CMatrix::Constant(1, 1, std::conj(phase)), -z0);
  const DomainPoint img = apply(g, par, q);
  CHECK(vec_gap(img.z, CVector::Zero(2)) < 1e-15);
  // the twist factor has modulus e^{+mu ||z0||^2 / 2} on z = z0, so the
  // image w-coordinate is exactly 1
  CHECK(std::abs(img.w(0) - Complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("action preserves the defining function sign") {
  const DomainParams par{3, 2, 1.4};
  const FbhAut g = random_aut(par, 31);
  for (const auto& p : sample_boundary(par, 32, 100))
    CHECK(std::abs(fbh_defining(par, apply(g, par, p))) < 1e-9);
  for (const auto& p : sample_interior(par, 33, 100))
    CHECK(classify(par, apply(g, par, p)) == Region::Interior);
}

TEST_CASE("compose matches sequential application") {
  for (double mu : {0.5, 1.0, 2.0}) {
    const DomainParams par{3, 1, mu};
    const FbhAut g = random_aut(par, 40 + static_cast<uint64_t>(10 * mu));
    const FbhAut h = random_aut(par, 41 + static_cast<uint64_t>(10 * mu));
    const FbhAut gh = compose(g, h, mu);
    for (const auto& p : mixed_samples(par, 42, 100)) {
      const DomainPoint seq = apply(g, par, apply(h, par, p));
      CHECK(point_gap(apply(gh, par, p), seq) < 1e-10);
    }
  }
}

TEST_CASE("compose of two translations") {
  const double mu = 1.0;
  const DomainParams par{2, 1, mu};
  Rng rng(50);
  const CVector v1 = rng.cgaussian_vector(2);
  const CVector v2 = rng.cgaussian_vector(2);
  const FbhAut t1 = FbhAut::translation(v1, 1);
  const FbhAut t2 = FbhAut::translation(v2, 1);
  const FbhAut c = compose(t1, t2, mu);
  CHECK(vec_gap(c.v(), v1 + v2) < 1e-14);
  CHECK(mat_gap(c.U(), CMatrix::Identity(2, 2)) == 0.0);
  // the leftover W is the Heisenberg-type phase: unit modulus
  CHECK(std::abs(std::abs(c.W()(0, 0)) - 1.0) < 1e-14);
  for (const auto& p : mixed_samples(par, 51, 100))
    CHECK(point_gap(apply(c, par, p), apply(t1, par, apply(t2, par, p))) <
          1e-10);
}

TEST_CASE("compose unitary with translation adjusts the translation") {
  const double mu = 0.8;
  const DomainParams par{2, 1, mu};
  Rng rng(60);
  const CMatrix u = rng.unitary(2);
  const CVector v = rng.cgaussian_vector(2);
  const FbhAut c = compose(FbhAut::z_unitary(u, 1), FbhAut::translation(v, 1), mu);
  CHECK(vec_gap(c.v(), v) < 1e-14);
  CHECK(mat_gap(c.U(), u) < 1e-14);
  const FbhAut c2 = compose(FbhAut::translation(v, 1), FbhAut::z_unitary(u, 1), mu);
  CHECK(vec_gap(c2.v(), u.adjoint() * v) < 1e-14);
  for (const auto& p : mixed_samples(par, 61, 50)) {
    const DomainPoint seq =
        apply(FbhAut::translation(v, 1), par, apply(FbhAut::z_unitary(u, 1), par, p));
    CHECK(point_gap(apply(c2, par, p), seq) < 1e-10);
  }
}

TEST_CASE("compose with identity is the identity of the group") {
  const double mu = 1.0;
  const FbhAut g = random_aut(DomainParams{4, 2, mu}, 70);
  const FbhAut id = FbhAut::identity(4, 2);
  CHECK(aut_gap(compose(g, id, mu), g) < 1e-12);
  CHECK(aut_gap(compose(id, g, mu), g) < 1e-12);
}

TEST_CASE("inverse") {
  const double mu = 1.2;
  const DomainParams par{3, 2, mu};
  CHECK(aut_gap(inverse(FbhAut::identity(3, 2)), FbhAut::identity(3, 2)) == 0.0);

  Rng rng(80);
  const CMatrix u = rng.unitary(3);
  CHECK(mat_gap(inverse(FbhAut::z_unitary(u, 2)).U(), u.adjoint()) == 0.0);

  const FbhAut g = random_aut(par, 81);
  CHECK(aut_gap(compose(g, inverse(g), mu), FbhAut::identity(3, 2)) < 1e-12);
  CHECK(aut_gap(compose(inverse(g), g, mu), FbhAut::identity(3, 2)) < 1e-12);

  const CVector v = rng.cgaussian_vector(3);
  const FbhAut t = FbhAut::translation(v, 2);
  for (const auto& p : mixed_samples(par, 82, 100))
    CHECK(point_gap(apply(inverse(t), par, apply(t, par, p)), p) < 1e-10);
}

TEST_CASE("group laws pointwise on random triples") {
  Rng seeds(90);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(seeds.uniform(0.0, 8.0)) % 8;
    const double mu = (trial % 3 == 0) ? 0.5 : (trial % 3 == 1 ? 1.0 : 2.0);
    const DomainParams par{n, 1, mu};
    const FbhAut f = random_aut(par, 900 + 3 * trial);
    const FbhAut g = random_aut(par, 901 + 3 * trial);
    const FbhAut h = random_aut(par, 902 + 3 * trial);
    const FbhAut left = compose(compose(f, g, mu), h, mu);
    const FbhAut right = compose(f, compose(g, h, mu), mu);
    CHECK(aut_gap(left, right) < 1e-10);
    for (const auto& p : mixed_samples(par, 903 + 3 * trial, 10)) {
      CHECK(point_gap(apply(left, par, p), apply(right, par, p)) < 1e-10);
      CHECK(point_gap(apply(compose(f, inverse(f), mu), par, p), p) < 1e-10);
    }
  }
}

TEST_CASE("to_base: explicit cases") {
  const DomainParams par{1, 1, 1.0};
  const DomainPoint p = base_point(par);
  const FbhAut g = to_base(par, p);
  CHECK(point_gap(apply(g, par, p), p) < 1e-14);

  // q = (0, e^{i pi/3}): pure w-phase rotation by the conjugate
  DomainPoint q;
  q.z = CVector::Zero(1);
  q.w = CVector::Constant(1, std::exp(kI * (M_PI / 3.0)));
  const FbhAut h = to_base(par, q);
  CHECK(vec_gap(h.v(), CVector::Zero(1)) == 0.0);
  CHECK(std::abs(h.W()(0, 0) - std::exp(-kI * (M_PI / 3.0))) < 1e-14);
  CHECK(point_gap(apply(h, par, q), p) < 1e-14);
}

TEST_CASE("to_base moves sampled boundary points to P") {
  for (int m : {1, 3}) {
    const DomainParams par{3, m, 0.75};
    const DomainPoint p = base_point(par);
    for (const auto& q : sample_boundary(par, 100 + m, 100)) {
      const FbhAut g = to_base(par, q);
      CHECK(point_gap(apply(g, par, q), p) < 1e-10);
    }
  }
}

TEST_CASE("to_base rejects non-boundary points") {
  const DomainParams par{2, 1, 1.0};
  DomainPoint inside;
  inside.z = CVector::Zero(2);
  inside.w = CVector::Constant(1, Complex{0.5, 0.0});
  try {
    to_base(par, inside);
    FAIL("expected NotBoundary");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotBoundary);
  }
}

TEST_CASE("random_aut is reproducible and valid") {
  const DomainParams par{4, 2, 1.0};
  const FbhAut a = random_aut(par, 7);
  const FbhAut b = random_aut(par, 7);
  CHECK(aut_gap(a, b) == 0.0);
  CHECK(aut_gap(a, random_aut(par, 8)) > 1e-6);
  CHECK(is_h_unitary(a.U(), HermitianSignature{4, 0}));
  CHECK(is_h_unitary(a.W(), HermitianSignature{2, 0}));
}

TEST_CASE("jacobian matches finite differences") {
  const DomainParams par{2, 2, 1.1};
  const FbhAut g = random_aut(par, 110);
  auto oracle = std::make_shared<AutOracle>(par, g);
  const FiniteDiffOracle fd(oracle, 1e-5);
  for (const auto& p : sample_interior(par, 111, 10)) {
    const CMatrix a = aut_jacobian(g, par, p);
    const CMatrix b = fd.jacobian(p);
    CHECK(mat_gap(a, b) < 1e-7 * std::max(1.0, max_abs(a)));
  }
}

TEST_CASE("aut json roundtrip") {
  const DomainParams par{3, 2, 1.0};
  const FbhAut g = random_aut(par, 120);
  const FbhAut back = aut_from_json(aut_to_json(g), "g");
  CHECK(aut_gap(g, back) < 1e-15);
  try {
    aut_from_json(parse_json_text("{\"U\":[[[1,0]]],\"W\":[[[1,0]]]}", "g"), "g");
    FAIL("expected Schema");
  } catch (const Error& e) {
    CHECK(e.code() == Err::Schema);
    CHECK(std::string(e.what()).find("missing key \"v\"") != std::string::npos);
  }
}

TEST_CASE("twist factor explicit value") {
  // e_v(z) = exp(-mu <z,v> - mu/2 ||v||^2) with <z,v> = sum z_i conj(v_i)
  const double mu = 2.0;
  CVector z(1), v(1);
  z << Complex{1.0, 1.0};
  v << Complex{0.5, 0.0};
  const Complex expected =
      std::exp(-mu * (z(0) * std::conj(v(0))) - 0.5 * mu * v.squaredNorm());
  CHECK(std::abs(twist_factor(mu, z, v) - expected) < 1e-15);
}
