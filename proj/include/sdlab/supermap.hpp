// Linear maps A -> B(H) stored by their images on the canonical basis.
// Linearity is structural: apply expands the argument in unit coordinates,
// so additivity and homogeneity hold by construction.

#pragma once

#include "sdlab/algebra.hpp"
#include "sdlab/types.hpp"

#include <vector>

namespace sdlab {

class SuperMap {
public:
  SuperMap() = default;

  const StarAlgebra& domain() const { return alg_; }
  const std::vector<Matrix>& images() const { return images_; }
  const Matrix& image(Index k) const { return images_.at(k); }
  Index space_dim() const { return alg_.space_dim(); }
  Index dim() const { return alg_.dim(); }

  // apply: the off-algebra component of a is projected away by coeffs_of.
  Matrix operator()(const Matrix& a) const;
  Matrix apply_coeffs(const CVector& coeffs) const;

  // Image of the unit product E_i E_j (zero matrix when the product is 0).
  Matrix image_of_product(Index i, Index j) const;

private:
  friend SuperMap supermap_from_images(StarAlgebra alg,
                                       std::vector<Matrix> images);
  StarAlgebra alg_;
  std::vector<Matrix> images_;
};

SuperMap supermap_from_images(StarAlgebra alg, std::vector<Matrix> images);
SuperMap identity_map(const StarAlgebra& alg);
SuperMap zero_map(const StarAlgebra& alg);

// sigma*(A) = sigma(A*)*; exact on units since E_k^* is another unit.
SuperMap star_conjugate(const SuperMap& m);

// (sigma + sigma*)/2; always *-linear.
SuperMap star_part(const SuperMap& m);

SuperMap right_compress(const SuperMap& m, const Matrix& p);

SuperMap add(const SuperMap& a, const SuperMap& b);
SuperMap sub(const SuperMap& a, const SuperMap& b);
SuperMap scale(Complex c, const SuperMap& m);

// max(1, largest spectral norm among the images).
double map_scale(const SuperMap& m);

struct PredicateCheck {
  bool passed = false;
  double residual = 0.0;
  double scale = 1.0;
};

// residual = max_k || m(E_k^*) - m(E_k)^* ||_2.
PredicateCheck is_star_linear(const SuperMap& m, const Tolerances& tol);

// residual = max_{i,j} || m(E_i E_j) - m(E_i) m(E_j) ||_2; bilinearity
// makes the basis pairs exhaustive.
PredicateCheck is_homomorphism(const SuperMap& m, const Tolerances& tol);

// N^2 x D matrix whose column k is the column-major vec of images[k].
Matrix matricize(const SuperMap& m);
SuperMap supermap_from_matricization(const StarAlgebra& alg, const Matrix& cols);

void require_same_domain(const SuperMap& a, const SuperMap& b,
                         const char* what);

}  // namespace sdlab
