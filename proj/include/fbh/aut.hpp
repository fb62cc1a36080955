#pragma once

#include <cstdint>

#include "fbh/domain.hpp"

namespace fbh {

// Automorphism of D_{n,m}(mu) in normal form: the composite
//
//   (z, w) |-> ( U (z + v),  e_v(z) * W w ),
//   e_v(z) = exp( -mu <z,v> - (mu/2) ||v||^2 ),   <x,y> = sum x_i conj(y_i).
//
// U in U(n) acts on z, W in U(m) acts on w, v in C^n translates z (with the
// compensating w-factor that keeps the domain invariant). The ordering
// unitary-after-twisted-translation makes this representation unique: two
// normal forms agree iff (U, W, v) agree field-wise.
class FbhAut {
 public:
  FbhAut(CMatrix u, CMatrix w, CVector v, double tol = kAlgebraicTol);

  static FbhAut identity(int n, int m);
  static FbhAut z_unitary(const CMatrix& u, int m);
  static FbhAut w_unitary(int n, const CMatrix& w);
  static FbhAut translation(const CVector& v, int m);

  const CMatrix& U() const { return u_; }
  const CMatrix& W() const { return w_; }
  const CVector& v() const { return v_; }
  int n() const { return static_cast<int>(u_.rows()); }
  int m() const { return static_cast<int>(w_.rows()); }

 private:
  CMatrix u_;
  CMatrix w_;
  CVector v_;
};

// The scalar factor e_v(z) of the twisted translation.
Complex twist_factor(double mu, const CVector& z, const CVector& v);

DomainPoint apply(const FbhAut& g, const DomainParams& par,
                  const DomainPoint& p);

// Normal form of g o h. The composite of two normal forms is again one; the
// w-phase c below comes from expanding the stacked twisted-translation
// exponents:
//   e_{v_g}(U_h(z+v_h)) * e_{v_h}(z) = e_{v'}(z) * c,
//   v' = v_h + U_h^* v_g,  c = exp(-i mu Im<v_h, U_h^* v_g>),
// so compose(g,h) = (U_g U_h, c W_g W_h, v_h + U_h^* v_g).
FbhAut compose(const FbhAut& g, const FbhAut& h, double mu);

FbhAut inverse(const FbhAut& g);

// Automorphism moving a boundary point q to the base point P = (0,...,0,1):
// translate z by -z_q, then rotate w so the transported w-coordinate becomes
// real positive (for m > 1, a unitary taking it to the last basis vector).
FbhAut to_base(const DomainParams& par, const DomainPoint& q,
               double boundary_tol = kBoundaryTol);

// Haar-ish random element: Haar unitaries for U, W and a complex Gaussian
// translation of spread `v_scale` per entry.
FbhAut random_aut(const DomainParams& par, uint64_t seed,
                  double v_scale = 0.5);

// Derivative of the action at p: (n+m) x (n+m), rows/cols ordered z then w.
CMatrix aut_jacobian(const FbhAut& g, const DomainParams& par,
                     const DomainPoint& p);

Json aut_to_json(const FbhAut& g);
FbhAut aut_from_json(const Json& j, const std::string& path);

}  // namespace fbh
