#include "sdlab/supermap.hpp"

#include "sdlab/linalg.hpp"

#include <string>
#include <utility>

namespace sdlab {

SuperMap supermap_from_images(StarAlgebra alg, std::vector<Matrix> images) {
  if (static_cast<Index>(images.size()) != alg.dim())
    throw shape_error("supermap_from_images: expected " +
                      std::to_string(alg.dim()) + " images, got " +
                      std::to_string(images.size()));
  const Index n = alg.space_dim();
  for (const Matrix& im : images) {
    if (im.rows() != n || im.cols() != n)
      throw shape_error("supermap_from_images: image is not " +
                        std::to_string(n) + "x" + std::to_string(n));
    require_finite(im, "supermap_from_images");
  }
  SuperMap m;
  m.alg_ = std::move(alg);
  m.images_ = std::move(images);
  return m;
}

Matrix SuperMap::operator()(const Matrix& a) const {
  return apply_coeffs(alg_.coeffs_of(a).coeffs);
}

Matrix SuperMap::apply_coeffs(const CVector& coeffs) const {
  if (coeffs.size() != alg_.dim())
    throw shape_error("apply_coeffs: coefficient length mismatch");
  Matrix out = Matrix::Zero(alg_.space_dim(), alg_.space_dim());
  for (Index k = 0; k < coeffs.size(); ++k) {
    if (coeffs(k) != Complex(0.0, 0.0)) out += coeffs(k) * images_[k];
  }
  return out;
}

Matrix SuperMap::image_of_product(Index i, Index j) const {
  const auto p = alg_.unit_product(i, j);
  if (!p.nonzero) return Matrix::Zero(alg_.space_dim(), alg_.space_dim());
  return images_[p.k];
}

SuperMap identity_map(const StarAlgebra& alg) {
  std::vector<Matrix> images;
  images.reserve(alg.dim());
  for (Index k = 0; k < alg.dim(); ++k) images.push_back(alg.basis_element(k));
  return supermap_from_images(alg, std::move(images));
}

SuperMap zero_map(const StarAlgebra& alg) {
  std::vector<Matrix> images(
      alg.dim(), Matrix::Zero(alg.space_dim(), alg.space_dim()));
  return supermap_from_images(alg, std::move(images));
}

SuperMap star_conjugate(const SuperMap& m) {
  const StarAlgebra& alg = m.domain();
  std::vector<Matrix> images(alg.dim());
  for (Index k = 0; k < alg.dim(); ++k)
    images[k] = m.image(alg.star_index(k)).adjoint();
  return supermap_from_images(alg, std::move(images));
}

SuperMap star_part(const SuperMap& m) {
  return scale(Complex(0.5, 0.0), add(m, star_conjugate(m)));
}

SuperMap right_compress(const SuperMap& m, const Matrix& p) {
  const Index n = m.space_dim();
  if (p.rows() != n || p.cols() != n)
    throw shape_error("right_compress: projection is not " +
                      std::to_string(n) + "x" + std::to_string(n));
  std::vector<Matrix> images;
  images.reserve(m.dim());
  for (const Matrix& im : m.images()) images.push_back(im * p);
  return supermap_from_images(m.domain(), std::move(images));
}

void require_same_domain(const SuperMap& a, const SuperMap& b,
                         const char* what) {
  if (!a.domain().same_as(b.domain()))
    throw shape_error(std::string(what) + ": domain algebras differ");
}

SuperMap add(const SuperMap& a, const SuperMap& b) {
  require_same_domain(a, b, "add");
  std::vector<Matrix> images;
  images.reserve(a.dim());
  for (Index k = 0; k < a.dim(); ++k) images.push_back(a.image(k) + b.image(k));
  return supermap_from_images(a.domain(), std::move(images));
}

SuperMap sub(const SuperMap& a, const SuperMap& b) {
  require_same_domain(a, b, "sub");
  std::vector<Matrix> images;
  images.reserve(a.dim());
  for (Index k = 0; k < a.dim(); ++k) images.push_back(a.image(k) - b.image(k));
  return supermap_from_images(a.domain(), std::move(images));
}

SuperMap scale(Complex c, const SuperMap& m) {
  std::vector<Matrix> images;
  images.reserve(m.dim());
  for (const Matrix& im : m.images()) images.push_back(c * im);
  return supermap_from_images(m.domain(), std::move(images));
}

double map_scale(const SuperMap& m) {
  double s = 1.0;
  for (const Matrix& im : m.images()) s = std::max(s, spectral_norm(im));
  return s;
}

PredicateCheck is_star_linear(const SuperMap& m, const Tolerances& tol) {
  PredicateCheck out;
  out.scale = map_scale(m);
  const StarAlgebra& alg = m.domain();
  for (Index k = 0; k < alg.dim(); ++k) {
    const double r =
        spectral_norm(m.image(alg.star_index(k)) - m.image(k).adjoint());
    out.residual = std::max(out.residual, r);
  }
  out.passed = out.residual <= tol.identity_tol * out.scale;
  return out;
}

PredicateCheck is_homomorphism(const SuperMap& m, const Tolerances& tol) {
  PredicateCheck out;
  out.scale = map_scale(m);
  const Index d = m.dim();
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const double r =
          spectral_norm(m.image_of_product(i, j) - m.image(i) * m.image(j));
      out.residual = std::max(out.residual, r);
    }
  out.passed = out.residual <= tol.identity_tol * out.scale;
  return out;
}

Matrix matricize(const SuperMap& m) {
  const Index n2 = m.space_dim() * m.space_dim();
  Matrix cols(n2, m.dim());
  for (Index k = 0; k < m.dim(); ++k) cols.col(k) = vectorize(m.image(k));
  return cols;
}

SuperMap supermap_from_matricization(const StarAlgebra& alg,
                                     const Matrix& cols) {
  const Index n = alg.space_dim();
  if (cols.rows() != n * n || cols.cols() != alg.dim())
    throw shape_error("supermap_from_matricization: expected " +
                      std::to_string(n * n) + "x" + std::to_string(alg.dim()));
  std::vector<Matrix> images;
  images.reserve(alg.dim());
  for (Index k = 0; k < alg.dim(); ++k)
    images.push_back(unvectorize(cols.col(k), n));
  return supermap_from_images(alg, std::move(images));
}

}  // namespace sdlab
