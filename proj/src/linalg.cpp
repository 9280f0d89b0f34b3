#include "sdlab/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace sdlab {

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

double frobenius_norm(const Matrix& a) { return a.norm(); }

double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw shape_error("mul: inner dimensions differ");
  return a * b;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw shape_error("add: dimensions differ");
  return a + b;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw shape_error("sub: dimensions differ");
  return a - b;
}

Matrix scale(Complex c, const Matrix& a) { return c * a; }

CVector vectorize(const Matrix& a) {
  return Eigen::Map<const CVector>(a.data(), a.size());
}

Matrix unvectorize(const CVector& v, Index n) {
  if (v.size() != n * n) throw shape_error("unvectorize: length is not n^2");
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

Index decide_rank(const RVector& svals, Index rows, double rank_tol_factor,
                  double data_scale) {
  if (svals.size() == 0) return 0;
  const double smax = svals(0);
  const double threshold =
      static_cast<double>(rows) * rank_tol_factor * std::max(smax, data_scale);
  Index r = 0;
  while (r < svals.size() && svals(r) > threshold) ++r;
  return r;
}

SpanBasis column_span(const Matrix& a, double rank_tol_factor,
                      double data_scale) {
  SpanBasis out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.basis = Matrix::Zero(a.rows(), 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  out.rank = decide_rank(s, a.rows(), rank_tol_factor, data_scale);
  out.basis = svd.matrixU().leftCols(out.rank);
  return out;
}

SpanBasis nullspace(const Matrix& a, double rank_tol_factor,
                    double data_scale) {
  SpanBasis out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.basis = Matrix::Identity(a.cols(), a.cols());
    out.rank = 0;
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  out.rank = decide_rank(s, a.rows(), rank_tol_factor, data_scale);
  out.basis = svd.matrixV().rightCols(a.cols() - out.rank);
  return out;
}

SpanBasis nullspace(const RMatrix& a, double rank_tol_factor,
                    double data_scale, RMatrix* basis_out) {
  SpanBasis out;
  if (a.rows() == 0 || a.cols() == 0) {
    if (basis_out) *basis_out = RMatrix::Identity(a.cols(), a.cols());
    out.rank = 0;
    return out;
  }
  Eigen::JacobiSVD<RMatrix> svd(a, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  out.rank = decide_rank(s, a.rows(), rank_tol_factor, data_scale);
  if (basis_out) *basis_out = svd.matrixV().rightCols(a.cols() - out.rank);
  return out;
}

double subspace_gap(const Matrix& u, const Matrix& v) {
  if (u.cols() != v.cols()) return 1.0;
  if (u.cols() == 0) return 0.0;
  // sin(theta_max) for equidimensional spans, computed thin.
  const Matrix ru = v - u * (u.adjoint() * v);
  const Matrix rv = u - v * (v.adjoint() * u);
  return std::max(spectral_norm(ru), spectral_norm(rv));
}

double distance_to_span(const Matrix& u, const CVector& x) {
  if (u.rows() != x.size()) throw shape_error("distance_to_span: dimensions");
  const CVector r = x - u * (u.adjoint() * x);
  return r.norm();
}

}  // namespace sdlab
