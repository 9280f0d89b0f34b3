#include "sdlab/algebra.hpp"

#include <stdexcept>
#include <string>

namespace sdlab {

namespace {

using RowMajorC =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

StarAlgebra build_algebra(const std::vector<Index>& blocks) {
  if (blocks.empty()) throw spec_error("build_algebra: block list is empty");
  StarAlgebra alg;
  alg.blocks_ = blocks;
  alg.block_offset_.reserve(blocks.size());
  alg.basis_offset_.reserve(blocks.size());
  for (Index nb : blocks) {
    if (nb < 1)
      throw spec_error("build_algebra: block sizes must be positive, got " +
                       std::to_string(nb));
    alg.block_offset_.push_back(alg.n_);
    alg.basis_offset_.push_back(alg.d_);
    alg.n_ += nb;
    alg.d_ += nb * nb;
  }
  return alg;
}

UnitIndex StarAlgebra::unit_index(Index k) const {
  if (k < 0 || k >= d_)
    throw std::out_of_range("basis index " + std::to_string(k) +
                            " out of range [0," + std::to_string(d_) + ")");
  Index b = 0;
  while (b + 1 < static_cast<Index>(blocks_.size()) && basis_offset_[b + 1] <= k)
    ++b;
  const Index local = k - basis_offset_[b];
  const Index nb = blocks_[b];
  return UnitIndex{b, local / nb, local % nb, block_offset_[b]};
}

Matrix StarAlgebra::basis_element(Index k) const {
  const UnitIndex u = unit_index(k);
  Matrix e = Matrix::Zero(n_, n_);
  e(u.offset + u.row, u.offset + u.col) = Complex(1.0, 0.0);
  return e;
}

Index StarAlgebra::star_index(Index k) const {
  const UnitIndex u = unit_index(k);
  return basis_offset_[u.block] + u.col * blocks_[u.block] + u.row;
}

StarAlgebra::UnitProduct StarAlgebra::unit_product(Index i, Index j) const {
  const UnitIndex a = unit_index(i);
  const UnitIndex b = unit_index(j);
  if (a.block != b.block || a.col != b.row) return UnitProduct{};
  const Index nb = blocks_[a.block];
  return UnitProduct{basis_offset_[a.block] + a.row * nb + b.col, true};
}

Matrix StarAlgebra::embed(const CVector& coeffs) const {
  if (coeffs.size() != d_)
    throw shape_error("embed: expected " + std::to_string(d_) +
                      " coefficients, got " + std::to_string(coeffs.size()));
  Matrix m = Matrix::Zero(n_, n_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Index nb = blocks_[b];
    const Index o = block_offset_[b];
    m.block(o, o, nb, nb) =
        Eigen::Map<const RowMajorC>(coeffs.data() + basis_offset_[b], nb, nb);
  }
  return m;
}

StarAlgebra::Membership StarAlgebra::coeffs_of(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != n_)
    throw shape_error("coeffs_of: matrix is not " + std::to_string(n_) + "x" +
                      std::to_string(n_));
  Membership out;
  out.coeffs.resize(d_);
  Matrix off = m;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Index nb = blocks_[b];
    const Index o = block_offset_[b];
    Eigen::Map<RowMajorC>(out.coeffs.data() + basis_offset_[b], nb, nb) =
        m.block(o, o, nb, nb);
    off.block(o, o, nb, nb).setZero();
  }
  out.residual = off.norm();
  return out;
}

bool StarAlgebra::contains(const Matrix& m, const Tolerances& tol) const {
  const Membership mem = coeffs_of(m);
  return mem.residual <= tol.identity_tol * std::max(1.0, m.norm());
}

CVector StarAlgebra::multiply_coeffs(const CVector& a, const CVector& b) const {
  if (a.size() != d_ || b.size() != d_)
    throw shape_error("multiply_coeffs: coefficient length mismatch");
  CVector out(d_);
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    const Index nb = blocks_[bi];
    const Index o = basis_offset_[bi];
    Eigen::Map<RowMajorC>(out.data() + o, nb, nb) =
        Eigen::Map<const RowMajorC>(a.data() + o, nb, nb) *
        Eigen::Map<const RowMajorC>(b.data() + o, nb, nb);
  }
  return out;
}

CVector StarAlgebra::identity_coeffs() const {
  CVector c = CVector::Zero(d_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Index nb = blocks_[b];
    for (Index i = 0; i < nb; ++i)
      c(basis_offset_[b] + i * nb + i) = Complex(1.0, 0.0);
  }
  return c;
}

}  // namespace sdlab
