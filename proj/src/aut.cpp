#include "fbh/aut.hpp"

#include <cmath>

#include "fbh/random.hpp"

namespace fbh {

namespace {
void check_unitary(const CMatrix& m, double tol, const char* which) {
  require(m.rows() == m.cols() && m.rows() >= 1, Err::DimensionMismatch,
          std::string(which) + " block must be square and non-empty");
  require(all_finite(m), Err::NonFinite,
          std::string(which) + " block has a non-finite entry");
  const double defect =
      max_abs(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols()));
  require(defect <= tol, Err::NotUnitary,
          std::string(which) + " block is not unitary (defect " +
              std::to_string(defect) + ")");
}
}  // namespace

FbhAut::FbhAut(CMatrix u, CMatrix w, CVector v, double tol)
    : u_(std::move(u)), w_(std::move(w)), v_(std::move(v)) {
  check_unitary(u_, tol, "U");
  check_unitary(w_, tol, "W");
  require(v_.size() == u_.rows(), Err::DimensionMismatch,
          "translation length must match the z-dimension");
  require(all_finite(v_), Err::NonFinite, "translation has a non-finite entry");
}

FbhAut FbhAut::identity(int n, int m) {
  return FbhAut(CMatrix::Identity(n, n), CMatrix::Identity(m, m),
                CVector::Zero(n));
}

FbhAut FbhAut::z_unitary(const CMatrix& u, int m) {
  return FbhAut(u, CMatrix::Identity(m, m), CVector::Zero(u.rows()));
}

FbhAut FbhAut::w_unitary(int n, const CMatrix& w) {
  return FbhAut(CMatrix::Identity(n, n), w, CVector::Zero(n));
}

FbhAut FbhAut::translation(const CVector& v, int m) {
  return FbhAut(CMatrix::Identity(v.size(), v.size()),
                CMatrix::Identity(m, m), v);
}

Complex twist_factor(double mu, const CVector& z, const CVector& v) {
  // <z,v> = sum z_i conj(v_i); Eigen's dot conjugates its first argument.
  const Complex zv = v.dot(z);
  return std::exp(-mu * zv - 0.5 * mu * v.squaredNorm());
}

DomainPoint apply(const FbhAut& g, const DomainParams& par,
                  const DomainPoint& p) {
  validate_point(par, p, "apply");
  require(g.n() == par.n && g.m() == par.m, Err::DimensionMismatch,
          "automorphism shape does not match domain");
  DomainPoint out;
  out.z = g.U() * (p.z + g.v());
  out.w = twist_factor(par.mu, p.z, g.v()) * (g.W() * p.w);
  return out;
}

FbhAut compose(const FbhAut& g, const FbhAut& h, double mu) {
  require(g.n() == h.n() && g.m() == h.m(), Err::DimensionMismatch,
          "compose: mismatched shapes");
  require(std::isfinite(mu) && mu > 0.0, Err::Schema,
          "compose: mu must be finite and > 0");
  const CVector uhv = h.U().adjoint() * g.v();
  const Complex inner = uhv.dot(h.v());  // <v_h, U_h^* v_g>
  const Complex phase = std::exp(Complex{0.0, -mu * inner.imag()});
  return FbhAut(g.U() * h.U(), phase * (g.W() * h.W()), h.v() + uhv);
}

FbhAut inverse(const FbhAut& g) {
  return FbhAut(g.U().adjoint(), g.W().adjoint(), -(g.U() * g.v()));
}

FbhAut to_base(const DomainParams& par, const DomainPoint& q,
               double boundary_tol) {
  require(classify(par, q, boundary_tol) == Region::Boundary, Err::NotBoundary,
          "to_base: point is not on the boundary (r = " +
              std::to_string(fbh_defining(par, q)) + ")");
  const CVector v = -q.z;
  const CVector t = twist_factor(par.mu, q.z, v) * q.w;
  const double tn = t.norm();
  require(tn > 1e-12, Err::Internal, "to_base: transported w vanished");
  CMatrix w;
  if (par.m == 1) {
    w = CMatrix::Constant(1, 1, std::conj(t(0)) / tn);
  } else {
    // Unitary sending t/||t|| to the last basis vector e_m.
    const CMatrix full = unitary_complete(t / tn);
    CMatrix perm = CMatrix::Zero(par.m, par.m);
    perm(par.m - 1, 0) = 1.0;
    for (int i = 0; i + 1 < par.m; ++i) perm(i, i + 1) = 1.0;
    w = perm * full.adjoint();
  }
  return FbhAut(CMatrix::Identity(par.n, par.n), w, v);
}

FbhAut random_aut(const DomainParams& par, uint64_t seed, double v_scale) {
  par.validate();
  Rng rng(seed);
  const CMatrix u = rng.unitary(par.n);
  const CMatrix w = rng.unitary(par.m);
  const CVector v = v_scale * rng.cgaussian_vector(par.n);
  return FbhAut(u, w, v);
}

CMatrix aut_jacobian(const FbhAut& g, const DomainParams& par,
                     const DomainPoint& p) {
  validate_point(par, p, "aut_jacobian");
  require(g.n() == par.n && g.m() == par.m, Err::DimensionMismatch,
          "automorphism shape does not match domain");
  const int n = par.n, m = par.m;
  const Complex e = twist_factor(par.mu, p.z, g.v());
  CMatrix j = CMatrix::Zero(n + m, n + m);
  j.topLeftCorner(n, n) = g.U();
  j.bottomRightCorner(m, m) = e * g.W();
  // d/dz_j of e_v(z) = -mu conj(v_j) e_v(z).
  const CVector ww = e * (g.W() * p.w);
  for (int jcol = 0; jcol < n; ++jcol)
    j.bottomLeftCorner(m, n).col(jcol) = -par.mu * std::conj(g.v()(jcol)) * ww;
  return j;
}

Json aut_to_json(const FbhAut& g) {
  return Json{{"U", matrix_to_json(g.U())},
              {"W", matrix_to_json(g.W())},
              {"v", vector_to_json(g.v())}};
}

FbhAut aut_from_json(const Json& j, const std::string& path) {
  expect_only_keys(j, {"U", "W", "v"}, path);
  CMatrix u = matrix_from_json(member(j, "U", path), path + ".U");
  CMatrix w = matrix_from_json(member(j, "W", path), path + ".W");
  CVector v = vector_from_json(member(j, "v", path), path + ".v");
  return FbhAut(std::move(u), std::move(w), std::move(v));
}

}  // namespace fbh
