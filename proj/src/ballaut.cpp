#include "fbh/ballaut.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace fbh {

namespace {
CVector lift(const CVector& x) {
  CVector l(x.size() + 1);
  l(0) = 1.0;
  l.tail(x.size()) = x;
  return l;
}
}  // namespace

ProjectiveAut::ProjectiveAut(CMatrix m, double h_tol) : m_(std::move(m)) {
  require(m_.rows() == m_.cols() && m_.rows() >= 2, Err::DimensionMismatch,
          "projective matrix must be square of size >= 2");
  require(all_finite(m_), Err::NonFinite, "projective matrix has a non-finite entry");
  const double fn = m_.norm();
  require(fn > 1e-300, Err::Schema, "projective matrix is zero");
  m_ *= std::sqrt(static_cast<double>(m_.rows())) / fn;
  phase_canonicalize(m_);

  const int d = dim();
  const CMatrix jm = signature_matrix({1, d});
  const CMatrix s = m_ * jm * m_.adjoint();
  const double c = s(0, 0).real();
  require(c > 1e-12, Err::NotBallAut,
          "conjugation constant is not positive (got " + std::to_string(c) + ")");
  c_ = c;
  h_residual_ = max_abs(s / c_ - jm);
  require(h_residual_ <= h_tol, Err::NotBallAut,
          "matrix is not H-unitary up to scale (defect " +
              std::to_string(h_residual_) + ")");
}

CVector act(const ProjectiveAut& t, const CVector& x) {
  require(x.size() == t.dim(), Err::DimensionMismatch,
          "act: point dimension " + std::to_string(x.size()) +
              " does not match ball dimension " + std::to_string(t.dim()));
  require(all_finite(x), Err::NonFinite, "act: non-finite coordinate");
  const CVector y = t.matrix() * lift(x);
  require(std::abs(y(0)) > 1e-14 * y.norm(), Err::InvalidTransform,
          "act: image homogeneous denominator vanishes");
  return y.tail(t.dim()) / y(0);
}

ProjectiveAut psi_alpha(Complex alpha, int d) {
  require(d >= 1, Err::DimensionMismatch, "psi_alpha: ball dimension must be >= 1");
  require(std::abs(alpha) < 1.0, Err::Schema, "psi_alpha requires |alpha| < 1");
  const double beta = std::sqrt(1.0 - std::norm(alpha));
  CMatrix m = CMatrix::Identity(d + 1, d + 1);
  m(0, 0) = 1.0 / beta;
  m(0, 1) = std::conj(alpha) / beta;
  m(1, 0) = alpha / beta;
  m(1, 1) = 1.0 / beta;
  return ProjectiveAut(std::move(m));
}

double CanonicalParams::relation_residual() const {
  const Complex diff = a0 - a_last;
  return std::abs(lambda * std::conj(diff) + std::conj(lambda) * diff - 2.0);
}

double CanonicalParams::constraint_residual() const {
  return std::abs(2.0 * lambda - 4.0 * a0 - 2.0 / lambda);
}

CanonicalParams canonical_form(const ProjectiveAut& t, double fix_tol) {
  const int d = t.dim();
  CVector q = CVector::Zero(d);
  q(d - 1) = 1.0;
  const CVector img = act(t, q);
  const double fix_defect = (img - q).cwiseAbs().maxCoeff();
  require(fix_defect <= fix_tol, Err::DoesNotFixQ,
          "canonical_form: Q = (0,...,0,1) is not fixed (defect " +
              std::to_string(fix_defect) + ")");

  CMatrix t1 = t.matrix() / std::sqrt(t.h_scale());

  // Split off the unitary middle block by polar projection.
  const CMatrix a_raw = t1.block(1, 1, d - 1, d - 1);
  CMatrix a_polar = CMatrix::Identity(d - 1, d - 1);
  double block_residual = 0.0;
  if (d >= 2) {
    Eigen::JacobiSVD<CMatrix> svd(a_raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
    a_polar = svd.matrixU() * svd.matrixV().adjoint();
    block_residual = max_abs(a_raw - a_polar);
    require(block_residual <= kBallAutTol, Err::NotBallAut,
            "canonical_form: middle block is not unitary after scale "
            "normalization (defect " + std::to_string(block_residual) + ")");
  }
  CMatrix v = t1;
  v.block(1, 0, d - 1, d + 1) = a_polar.adjoint() * t1.block(1, 0, d - 1, d + 1);

  // The homogeneous eigenvalue on the Q-lift; the central phase is fixed by
  // rotating it onto the positive imaginary axis.
  const Complex lam0 = v(0, 0) + v(0, d);
  require(std::abs(lam0) > 1e-9, Err::Internal,
          "canonical_form: degenerate eigenvalue on the fixed lift");
  const Complex ph = std::exp(Complex{0.0, M_PI_2 - std::arg(lam0)});

  CanonicalParams out;
  out.d = d;
  out.a_block = ph * a_polar;
  out.a0 = ph * v(0, 0);
  // a enters the reconstruction only through A a and lambda conj(a), where a
  // central phase would cancel; keep it unphased so that
  // diag(1, A, 1) V(a0, a, lambda) is exactly ph times the input matrix.
  out.a = v.block(1, 0, d - 1, 1);
  out.lambda = ph * lam0;
  out.a_last = ph * v(d, 0);
  out.block_residual = block_residual;
  return out;
}

ProjectiveAut from_canonical(const CanonicalParams& p) {
  const int d = p.d;
  require(d >= 1, Err::DimensionMismatch, "from_canonical: d must be >= 1");
  require(p.a_block.rows() == d - 1 && p.a_block.cols() == d - 1 &&
              p.a.size() == d - 1,
          Err::DimensionMismatch, "from_canonical: block shapes do not match d");
  require(std::abs(p.lambda) > 1e-12, Err::Schema,
          "from_canonical: lambda must be nonzero");
  const Complex lam_inv = 1.0 / p.lambda;
  CMatrix v(d + 1, d + 1);
  v(0, 0) = p.a0;
  v.block(0, 1, 1, d - 1) = p.lambda * p.a.adjoint();
  v(0, d) = p.lambda - p.a0;
  v.block(1, 0, d - 1, 1) = p.a;
  v.block(1, 1, d - 1, d - 1) = CMatrix::Identity(d - 1, d - 1);
  v.block(1, d, d - 1, 1) = -p.a;
  v(d, 0) = lam_inv + p.a0;
  v.block(d, 1, 1, d - 1) = p.lambda * p.a.adjoint();
  v(d, d) = p.lambda - lam_inv - p.a0;
  v.block(1, 0, d - 1, d + 1) = p.a_block * v.block(1, 0, d - 1, d + 1);
  return ProjectiveAut(std::move(v));
}

MatrixFit fit_projective_matrix(
    const std::vector<std::pair<CVector, CVector>>& pairs, int d_in, int d_out,
    double rel_gap_tol) {
  require(d_in >= 1 && d_out >= 1, Err::DimensionMismatch,
          "fit: ball dimensions must be >= 1");
  const int ci = d_in + 1, co = d_out + 1;
  require(static_cast<long>(pairs.size()) * d_out >= 3L * ci * co,
          Err::FitFailed,
          "fit: need at least " +
              std::to_string((3L * ci * co + d_out - 1) / d_out) + " pairs, got " +
              std::to_string(pairs.size()));

  CMatrix l = CMatrix::Zero(static_cast<Eigen::Index>(pairs.size()) * d_out,
                            static_cast<Eigen::Index>(ci) * co);
  Eigen::Index row = 0;
  for (size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& [x, y] = pairs[idx];
    require(x.size() == d_in && y.size() == d_out, Err::DimensionMismatch,
            "fit: pair " + std::to_string(idx) + " has wrong dimensions");
    require(all_finite(x) && all_finite(y), Err::NonFinite,
            "fit: pair " + std::to_string(idx) + " has a non-finite entry");
    const CVector lx = lift(x), ly = lift(y);
    int pivot = 0;
    for (int b = 1; b < co; ++b)
      if (std::abs(ly(b)) > std::abs(ly(pivot))) pivot = b;
    // [1; y] ~ T [1; x]  <=>  ly[b] (T lx)[pivot] - ly[pivot] (T lx)[b] = 0.
    for (int b = 0; b < co; ++b) {
      if (b == pivot) continue;
      for (int c = 0; c < ci; ++c) {
        l(row, static_cast<Eigen::Index>(pivot) * ci + c) = ly(b) * lx(c);
        l(row, static_cast<Eigen::Index>(b) * ci + c) = -ly(pivot) * lx(c);
      }
      ++row;
    }
  }

  SmallestSingular s = min_right_singular_info(l, rel_gap_tol);
  require(!s.ambiguous, Err::AmbiguousFit,
          "fit: solution not unique (smallest singular values " +
              std::to_string(s.sigma_min) + ", " + std::to_string(s.sigma_next) +
              ")");
  CMatrix t(co, ci);
  for (int r = 0; r < co; ++r)
    for (int c = 0; c < ci; ++c) t(r, c) = s.vector(static_cast<Eigen::Index>(r) * ci + c);
  t *= std::sqrt(static_cast<double>(co)) / t.norm();
  phase_canonicalize(t);
  return MatrixFit{std::move(t), s.sigma_min, s.sigma_next};
}

ProjectiveFit fit_projective(
    const std::vector<std::pair<CVector, CVector>>& pairs, int d,
    double rel_gap_tol, double h_tol) {
  require(static_cast<long>(pairs.size()) >= 3L * (d + 1) * (d + 1),
          Err::FitFailed,
          "fit: need at least " + std::to_string(3L * (d + 1) * (d + 1)) +
              " pairs for a ball of dimension " + std::to_string(d));
  MatrixFit mf = fit_projective_matrix(pairs, d, d, rel_gap_tol);
  return ProjectiveFit{ProjectiveAut(std::move(mf.t), h_tol), mf.sigma_min,
                       mf.sigma_next};
}

HScaled h_scale_normalize(const CMatrix& t, int d_in, int d_out, double h_tol) {
  require(t.rows() == d_out + 1 && t.cols() == d_in + 1, Err::DimensionMismatch,
          "h_scale_normalize: matrix shape does not match ball dimensions");
  const CMatrix j_in = signature_matrix({1, d_in});
  const CMatrix j_out = signature_matrix({1, d_out});
  const CMatrix s = t.adjoint() * j_out * t;
  const double c = s(0, 0).real();
  require(c > 1e-12, Err::NotBallAut,
          "h_scale_normalize: conjugation constant is not positive");
  HScaled out;
  out.c = c;
  out.residual = max_abs(s / c - j_in);
  require(out.residual <= h_tol, Err::NotBallAut,
          "h_scale_normalize: matrix does not carry the source form to the "
          "target form (defect " + std::to_string(out.residual) + ")");
  out.t1 = t / std::sqrt(c);
  return out;
}

Json projective_to_json(const ProjectiveAut& t) {
  return Json{{"d", t.dim()}, {"M", matrix_to_json(t.matrix())}};
}

ProjectiveAut projective_from_json(const Json& j, const std::string& path) {
  expect_only_keys(j, {"d", "M"}, path);
  CMatrix m = matrix_from_json(member(j, "M", path), path + ".M");
  if (j.contains("d")) {
    const int d = int_from_json(j["d"], path + ".d");
    require(m.rows() == d + 1, Err::Schema,
            path + ": matrix size does not match d");
  }
  return ProjectiveAut(std::move(m));
}

Json canonical_to_json(const CanonicalParams& p) {
  return Json{{"d", p.d},
              {"A", matrix_to_json(p.a_block)},
              {"a0", complex_to_json(p.a0)},
              {"a", vector_to_json(p.a)},
              {"lambda", complex_to_json(p.lambda)},
              {"a_last", complex_to_json(p.a_last)},
              {"kappa", complex_to_json(p.kappa())},
              {"block_residual", p.block_residual},
              {"relation_residual", p.relation_residual()},
              {"constraint_residual", p.constraint_residual()}};
}

}  // namespace fbh
