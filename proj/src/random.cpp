#include "fbh/random.hpp"

#include <Eigen/QR>

namespace fbh {

CVector Rng::cgaussian_vector(int n) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = cgaussian();
  return v;
}

CMatrix Rng::cgaussian_matrix(int rows, int cols) {
  CMatrix m(rows, cols);
  // Fill in row-major order so a vector and a 1-column matrix draw the same
  // stream.
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cgaussian();
  return m;
}

CMatrix Rng::unitary(int n) {
  const CMatrix g = cgaussian_matrix(n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a == 0.0) ? Complex{1.0, 0.0} : d / a;
  }
  return q;
}

CVector Rng::unit_sphere(int m) {
  while (true) {
    CVector v = cgaussian_vector(m);
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

}  // namespace fbh
