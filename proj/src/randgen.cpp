#include "sdlab/randgen.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace sdlab {

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::cnormal() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return Complex(r * std::cos(phi), r * std::sin(phi));
}

std::uint64_t substream(std::uint64_t seed, std::uint64_t id) {
  Rng mix(seed ^ (0x51ab5eedULL + id * 0x9e3779b97f4a7c15ULL));
  return mix.next_u64();
}

Matrix gaussian_matrix(Rng& rng, Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = rng.cnormal();
  return m;
}

RMatrix gaussian_real_matrix(Rng& rng, Index rows, Index cols) {
  RMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

Matrix hermitian_gaussian(Rng& rng, Index n) {
  const Matrix g = gaussian_matrix(rng, n);
  return 0.5 * (g + g.adjoint());
}

Matrix skew_adjoint_gaussian(Rng& rng, Index n) {
  const Matrix g = gaussian_matrix(rng, n);
  return 0.5 * (g - g.adjoint());
}

CVector gaussian_coeffs(Rng& rng, Index d) {
  CVector c(d);
  for (Index i = 0; i < d; ++i) c(i) = rng.cnormal();
  return c;
}

Matrix random_unitary(Rng& rng, Index n) {
  const Matrix g = gaussian_matrix(rng, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex rj = r(j, j);
    const double a = std::abs(rj);
    if (a > 0.0) q.col(j) *= rj / a;
  }
  return q;
}

}  // namespace sdlab
