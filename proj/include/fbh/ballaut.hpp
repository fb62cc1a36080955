#pragma once

#include <utility>
#include <vector>

#include "fbh/jsonio.hpp"
#include "fbh/linalg.hpp"

namespace fbh {

// A fitted or constructed matrix is accepted as a ball automorphism when the
// scaled H-unitarity defect stays below this gate.
inline constexpr double kBallAutTol = 1e-6;

// Automorphism of the unit ball B^d, represented projectively: an invertible
// (d+1)x(d+1) matrix M acting on homogeneous lifts [1; x], H-unitary up to a
// positive scalar for J = diag(1, -1, ..., -1).  M is stored up to scalar
// with a fixed convention: Frobenius norm sqrt(d+1) and the largest-modulus
// entry real positive, so equal actions give equal stored matrices.
class ProjectiveAut {
 public:
  explicit ProjectiveAut(CMatrix m, double h_tol = kBallAutTol);

  int dim() const { return static_cast<int>(m_.rows()) - 1; }
  const CMatrix& matrix() const { return m_; }

  // H-unitarity defect of M / sqrt(c): max-norm of (M J M^*)/c - J.
  double h_residual() const { return h_residual_; }
  // The positive conjugation constant of the raw stored matrix.
  double h_scale() const { return c_; }

 private:
  CMatrix m_;
  double c_ = 1.0;
  double h_residual_ = 0.0;
};

// Projective action: x |-> dehomogenize(M [1; x]).  Fails with
// InvalidTransform when the image's homogeneous denominator is ~0.
CVector act(const ProjectiveAut& t, const CVector& x);

// The one-parameter Moebius generator moving the origin along the first
// coordinate: with beta = sqrt(1 - |alpha|^2),
//   [ 1/beta      conj(alpha)/beta  0 ]
//   [ alpha/beta  1/beta            0 ]
//   [ 0           0                 I ].
ProjectiveAut psi_alpha(Complex alpha, int d);

// Parameters of the normal form of a ball automorphism fixing the boundary
// point Q = (0, ..., 0, 1).  Any such automorphism factors as
// diag(1, A, 1) * V with A in U(d-1) and
//
//       [ a_0        lambda conj(a)^T   lambda - a_0             ]
//   V = [ a          I                  -a                       ]
//       [ 1/lambda + a_0   lambda conj(a)^T   lambda - 1/lambda - a_0 ],
//
// up to the central scalar.  The scalar is fixed here so that lambda is pure
// imaginary with Im lambda > 0; with that convention kappa := -1/lambda^2 is
// real positive (the identity gets lambda = i, kappa = 1).
struct CanonicalParams {
  int d = 2;        // ball dimension (matrix size d+1)
  CMatrix a_block;  // A, (d-1)x(d-1) unitary, central phase applied
  Complex a0;
  CVector a;        // length d-1
  Complex lambda;
  Complex a_last;   // measured bottom-left entry; equals 1/lambda + a0
  double block_residual = 0.0;  // distance of the raw middle block from unitary

  Complex kappa() const { return -1.0 / (lambda * lambda); }
  // Residual of the phase-invariant boundary-fixing relation
  // lambda (conj(a0) - conj(a_last)) + conj(lambda) (a0 - a_last) = 2.
  double relation_residual() const;
  // Residual of the classification constraint 2 lambda - 4 a0 - 2/lambda = 0
  // (zero exactly for transfers of the power maps).
  double constraint_residual() const;
};

CanonicalParams canonical_form(const ProjectiveAut& t,
                               double fix_tol = 1e-9);

ProjectiveAut from_canonical(const CanonicalParams& p);

// Least-squares fit of a projective matrix from point pairs (x, y), via the
// standard direct linear transform: each pair contributes the cross-product
// constraints [1; y] ~ T [1; x], and T is the right singular vector of the
// stacked constraint matrix for the smallest singular value.
struct MatrixFit {
  CMatrix t;          // (d_out+1) x (d_in+1), Frobenius/phase normalized
  double sigma_min;   // smallest singular value; ~0 for consistent exact data
  double sigma_next;  // next one; the fit is well-posed when it is far above
};

MatrixFit fit_projective_matrix(
    const std::vector<std::pair<CVector, CVector>>& pairs, int d_in, int d_out,
    double rel_gap_tol = kFitTol);

struct ProjectiveFit {
  ProjectiveAut aut;
  double sigma_min;
  double sigma_next;
};

// Square fit with ball-automorphism validation (H-unitarity within h_tol).
// Requires at least 3 (d+1)^2 pairs.
ProjectiveFit fit_projective(
    const std::vector<std::pair<CVector, CVector>>& pairs, int d,
    double rel_gap_tol = kFitTol, double h_tol = kBallAutTol);

// Rectangular analogue of the scale step: divides T by sqrt(c) where
// T^* J_out T = c J_in + error; used when fitting proper-embedding
// candidates between balls of different dimension.
struct HScaled {
  CMatrix t1;
  double c;
  double residual;  // max-norm of (T^* J_out T)/c - J_in
};
HScaled h_scale_normalize(const CMatrix& t, int d_in, int d_out,
                          double h_tol = kBallAutTol);

Json projective_to_json(const ProjectiveAut& t);
ProjectiveAut projective_from_json(const Json& j, const std::string& path);
Json canonical_to_json(const CanonicalParams& p);

}  // namespace fbh
