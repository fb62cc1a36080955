#pragma once

#include <Eigen/Dense>
#include <complex>

#include "fbh/errors.hpp"

namespace fbh {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Default tolerances. Algebraic identities (unitarity, composition laws)
// are checked near machine precision; quantities recovered from fitted or
// sampled data get the looser gate.
inline constexpr double kAlgebraicTol = 1e-10;
inline constexpr double kFitTol = 1e-8;

inline const Complex kI{0.0, 1.0};

bool all_finite(const CMatrix& m);
bool all_finite(const CVector& v);

// Largest absolute entry; 0 for empty.
double max_abs(const CMatrix& m);

// Indefinite Hermitian form <x,x> = sum_{i<p} |x_i|^2 - sum_{i>=p} |x_i|^2.
// q = 0 degenerates to the ordinary positive form (then is_h_unitary is the
// ordinary unitarity test).
struct HermitianSignature {
  int p = 0;
  int q = 0;

  int dim() const { return p + q; }
  void validate() const;
};

CMatrix signature_matrix(const HermitianSignature& sig);
double hform_eval(const HermitianSignature& sig, const CVector& x);

// max-norm of M J M^* - J, the defect of M preserving the form.
double h_unitary_residual(const CMatrix& m, const HermitianSignature& sig);
bool is_h_unitary(const CMatrix& m, const HermitianSignature& sig,
                  double tol = kAlgebraicTol);

// Extend k orthonormal columns (N x k, k <= N) to a full N x N unitary.
// The input columns are reproduced exactly as the leading columns; the added
// ones come from Gram-Schmidt on standard basis vectors, picking at each step
// the basis vector with the largest residual (ties broken by lowest index),
// which makes the result deterministic.
CMatrix unitary_complete(const CMatrix& cols, double tol = kAlgebraicTol);

struct SmallestSingular {
  CVector vector;   // unit right singular vector for the smallest value
  double sigma_min = 0.0;
  double sigma_next = 0.0;  // second smallest singular value
  bool ambiguous = false;   // smallest two not separated at rel_gap_tol
};

// Right singular vector for the smallest singular value of an M x N matrix
// (M >= N), phase-fixed via phase_canonicalize. ambiguous is set when the
// two smallest singular values coincide to relative precision rel_gap_tol.
SmallestSingular min_right_singular_info(const CMatrix& m,
                                         double rel_gap_tol = kFitTol);

// Same, but throws Err::AmbiguousFit instead of flagging.
CVector min_right_singular(const CMatrix& m, double rel_gap_tol = kFitTol);

// Multiply by a unit scalar so the largest-modulus entry (lowest index on
// near-ties) becomes real positive. No-op on zero input.
void phase_canonicalize(CVector& v);
void phase_canonicalize(CMatrix& m);

}  // namespace fbh
