// Core value types shared across the library: complex dense matrices,
// tolerance bundle, and the error taxonomy used at API boundaries.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace sdlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Thrown when an input document or parameter is structurally invalid
// (empty block list, non-positive block size, bad grid size, ...).
class spec_error : public std::runtime_error {
public:
  explicit spec_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on dimension mismatches between operands.
class shape_error : public std::runtime_error {
public:
  explicit shape_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a construction's hypotheses fail (non-*-linear input where
// the construction needs the involution, d that is not a derivation, ...).
class precondition_error : public std::runtime_error {
public:
  explicit precondition_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Comparison tolerances. identity_tol gates residual checks relative to
// max(1, scale); rank_tol_factor enters rank decisions as
// sigma_max * rows * rank_tol_factor.
struct Tolerances {
  double identity_tol = 1e-9;
  double rank_tol_factor = 1e-12;

  void validate() const {
    if (!(identity_tol >= 0.0) || !std::isfinite(identity_tol))
      throw spec_error("identity_tol must be finite and nonnegative");
    if (!(rank_tol_factor >= 0.0) || !std::isfinite(rank_tol_factor))
      throw spec_error("rank_tol_factor must be finite and nonnegative");
  }
};

inline bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

inline void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m))
    throw spec_error(std::string(what) + ": entries must be finite");
}

inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw shape_error(std::string(what) + ": matrix must be square");
}

}  // namespace sdlab
