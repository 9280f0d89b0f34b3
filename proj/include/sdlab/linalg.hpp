// Dense linear-algebra helpers on top of Eigen: operator norms, the
// column-major matrix <-> vector reshape, rank decisions, nullspaces,
// orthonormal spans, and subspace gaps.

#pragma once

#include "sdlab/types.hpp"

#include <vector>

namespace sdlab {

Matrix adjoint(const Matrix& a);
double frobenius_norm(const Matrix& a);

// Largest singular value.
double spectral_norm(const Matrix& a);

// Checked arithmetic used at API boundaries; internal code uses Eigen
// operators directly once shapes are established.
Matrix mul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(Complex c, const Matrix& a);

// Column-major reshape between N x N matrices and length-N^2 vectors.
CVector vectorize(const Matrix& a);
Matrix unvectorize(const CVector& v, Index n);

// Number of singular values above
//   rows * rank_tol_factor * max(sigma_max, data_scale).
// svals must be in decreasing order. data_scale guards the all-noise case
// (a stack that is zero up to rounding must get rank 0); pass the natural
// magnitude of the generating data, or 0 to use sigma_max alone.
Index decide_rank(const RVector& svals, Index rows, double rank_tol_factor,
                  double data_scale);

struct SpanBasis {
  Matrix basis;                        // orthonormal columns (may be 0 cols)
  std::vector<double> singular_values; // full list, decreasing
  Index rank = 0;
};

// Orthonormal basis of the column span of a (complex SVD + rank decision).
SpanBasis column_span(const Matrix& a, double rank_tol_factor,
                      double data_scale);

// Orthonormal basis of the right nullspace of a.
SpanBasis nullspace(const Matrix& a, double rank_tol_factor,
                    double data_scale);
SpanBasis nullspace(const RMatrix& a, double rank_tol_factor,
                    double data_scale, RMatrix* basis_out);

// sin of the largest principal angle between the spans of two matrices
// with orthonormal columns; 1 if the dimensions differ.
double subspace_gap(const Matrix& u, const Matrix& v);

// Residual of X against a subspace with orthonormal basis u:
// ||X - u u^* X||_2 normalized by nothing (caller scales).
double distance_to_span(const Matrix& u, const CVector& x);

}  // namespace sdlab
