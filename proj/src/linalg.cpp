#include "fbh/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace fbh {

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

bool all_finite(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag()))
      return false;
  return true;
}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

void HermitianSignature::validate() const {
  require(p >= 0 && q >= 0 && p + q >= 1, Err::Schema,
          "signature (" + std::to_string(p) + "," + std::to_string(q) +
              ") must have p,q >= 0 and p+q >= 1");
}

CMatrix signature_matrix(const HermitianSignature& sig) {
  sig.validate();
  CMatrix j = CMatrix::Identity(sig.dim(), sig.dim());
  for (int i = sig.p; i < sig.dim(); ++i) j(i, i) = -1.0;
  return j;
}

double hform_eval(const HermitianSignature& sig, const CVector& x) {
  sig.validate();
  require(x.size() == sig.dim(), Err::DimensionMismatch,
          "vector length " + std::to_string(x.size()) +
              " does not match signature dimension " +
              std::to_string(sig.dim()));
  require(all_finite(x), Err::NonFinite, "hform_eval: non-finite entry");
  double s = 0.0;
  for (int i = 0; i < sig.p; ++i) s += std::norm(x(i));
  for (int i = sig.p; i < sig.dim(); ++i) s -= std::norm(x(i));
  return s;
}

double h_unitary_residual(const CMatrix& m, const HermitianSignature& sig) {
  sig.validate();
  require(m.rows() == m.cols() && m.rows() == sig.dim(), Err::DimensionMismatch,
          "matrix must be square of signature dimension");
  require(all_finite(m), Err::NonFinite, "h_unitary_residual: non-finite entry");
  const CMatrix j = signature_matrix(sig);
  return max_abs(m * j * m.adjoint() - j);
}

bool is_h_unitary(const CMatrix& m, const HermitianSignature& sig, double tol) {
  return h_unitary_residual(m, sig) <= tol;
}

CMatrix unitary_complete(const CMatrix& cols, double tol) {
  const Eigen::Index n = cols.rows();
  const Eigen::Index k = cols.cols();
  require(n >= 1 && k <= n, Err::DimensionMismatch,
          "unitary_complete: need an N x k block with k <= N");
  require(all_finite(cols), Err::NonFinite, "unitary_complete: non-finite entry");
  if (k > 0) {
    const double defect =
        max_abs(cols.adjoint() * cols - CMatrix::Identity(k, k));
    require(defect <= tol, Err::NotOrthonormal,
            "input columns are not orthonormal (defect " +
                std::to_string(defect) + ")");
  }

  CMatrix b(n, n);
  b.leftCols(k) = cols;
  for (Eigen::Index filled = k; filled < n; ++filled) {
    const auto cur = b.leftCols(filled);
    // Residual norm of e_i against the current span is 1 - ||row i of cur||^2.
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = 1.0 - cur.row(i).squaredNorm();
      if (r > best_norm * (1.0 + 1e-12)) {
        best_norm = r;
        best = i;
      }
    }
    require(best_norm > 1e-12, Err::Internal,
            "unitary_complete: no basis vector left outside the span");
    CVector r = CVector::Zero(n);
    r(best) = 1.0;
    // Two Gram-Schmidt passes for numerical orthogonality.
    r -= cur * (cur.adjoint() * r);
    r -= cur * (cur.adjoint() * r);
    b.col(filled) = r / r.norm();
  }
  return b;
}

SmallestSingular min_right_singular_info(const CMatrix& m, double rel_gap_tol) {
  require(m.rows() >= m.cols() && m.cols() >= 1, Err::DimensionMismatch,
          "min_right_singular: need at least as many rows as columns");
  require(all_finite(m), Err::NonFinite, "min_right_singular: non-finite entry");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Eigen::Index nc = m.cols();
  SmallestSingular out;
  out.vector = svd.matrixV().col(nc - 1);
  phase_canonicalize(out.vector);
  out.sigma_min = sv(nc - 1);
  out.sigma_next =
      nc >= 2 ? sv(nc - 2) : std::numeric_limits<double>::infinity();
  // Measure the gap against the matrix scale: when the nullspace has
  // dimension >= 2 both smallest values sit at roundoff level, where their
  // mutual ratio is meaningless but sigma_max is not.
  out.ambiguous =
      nc >= 2 && (out.sigma_next - out.sigma_min) <= rel_gap_tol * sv(0);
  return out;
}

CVector min_right_singular(const CMatrix& m, double rel_gap_tol) {
  SmallestSingular s = min_right_singular_info(m, rel_gap_tol);
  require(!s.ambiguous, Err::AmbiguousFit,
          "smallest two singular values coincide (" +
              std::to_string(s.sigma_min) + " vs " +
              std::to_string(s.sigma_next) + ")");
  return s.vector;
}

namespace {
Complex canonical_phase(const Complex* data, Eigen::Index size) {
  Eigen::Index best = -1;
  double best_abs = 0.0;
  for (Eigen::Index i = 0; i < size; ++i) {
    const double a = std::abs(data[i]);
    if (a > best_abs * (1.0 + 1e-12)) {
      best_abs = a;
      best = i;
    }
  }
  if (best < 0 || best_abs == 0.0) return {1.0, 0.0};
  return std::conj(data[best]) / best_abs;
}
}  // namespace

void phase_canonicalize(CVector& v) { v *= canonical_phase(v.data(), v.size()); }

void phase_canonicalize(CMatrix& m) {
  // Column-major storage: "lowest index" means column-major order, which is
  // deterministic for a fixed shape.
  m *= canonical_phase(m.data(), m.size());
}

}  // namespace fbh
