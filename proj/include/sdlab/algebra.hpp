// Finite-dimensional C*-algebras as block-diagonal matrix algebras
// A = M_{n_1} ⊕ ... ⊕ M_{n_k} acting on C^N, N = Σ n_i.  The canonical
// basis is the matrix units, blocks in order, row-major within a block.

#pragma once

#include "sdlab/types.hpp"

#include <vector>

namespace sdlab {

// Position of basis element k: block b, unit E_{row,col}, block offset in C^N.
struct UnitIndex {
  Index block = 0;
  Index row = 0;
  Index col = 0;
  Index offset = 0;
};

class StarAlgebra {
public:
  // Placeholder until assigned from build_algebra (N = D = 0).
  StarAlgebra() = default;

  const std::vector<Index>& blocks() const { return blocks_; }
  Index space_dim() const { return n_; }  // N
  Index dim() const { return d_; }        // D = Σ n_i²

  // Basis bookkeeping.  All products of units are exact:
  // E_i E_j is either 0 or another unit.
  UnitIndex unit_index(Index k) const;
  Matrix basis_element(Index k) const;
  Index star_index(Index k) const;  // index of E_k^*

  struct UnitProduct {
    Index k = -1;
    bool nonzero = false;
  };
  UnitProduct unit_product(Index i, Index j) const;

  // Coordinates under the trace inner product <X,Y> = trace(X^* Y).
  // residual is the Frobenius norm of the part of m outside the
  // block-diagonal pattern; it is exactly 0 for members.
  struct Membership {
    CVector coeffs;
    double residual = 0.0;
  };
  Matrix embed(const CVector& coeffs) const;
  Membership coeffs_of(const Matrix& m) const;
  bool contains(const Matrix& m, const Tolerances& tol) const;

  // Exact product in coordinates (per-block GEMM on unit coefficients).
  CVector multiply_coeffs(const CVector& a, const CVector& b) const;

  CVector identity_coeffs() const;
  Matrix identity() const { return Matrix::Identity(n_, n_); }

  bool same_as(const StarAlgebra& other) const {
    return blocks_ == other.blocks_;
  }

private:
  friend StarAlgebra build_algebra(const std::vector<Index>& blocks);

  std::vector<Index> blocks_;
  std::vector<Index> block_offset_;  // start of block b in C^N
  std::vector<Index> basis_offset_;  // first basis index of block b
  Index n_ = 0;
  Index d_ = 0;
};

// Validates the block list (non-empty, all sizes >= 1).
StarAlgebra build_algebra(const std::vector<Index>& blocks);

}  // namespace sdlab
