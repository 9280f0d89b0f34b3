#include "sdlab/constructions.hpp"

#include "sdlab/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace sdlab {

namespace {

struct RangeSpan {
  Matrix projection;
  Matrix basis;       // orthonormal columns spanning the range
  Matrix complement;  // orthonormal columns spanning the orthocomplement
  std::vector<double> singular_values;
};

RangeSpan range_span(const std::vector<Matrix>& mats, Index n,
                     const Tolerances& tol, double data_scale) {
  for (const Matrix& m : mats)
    if (m.rows() != n || m.cols() != n)
      throw shape_error("range_span_projection: matrix is not " +
                        std::to_string(n) + "x" + std::to_string(n));
  RangeSpan out;
  if (mats.empty()) {
    out.projection = Matrix::Zero(n, n);
    out.basis = Matrix::Zero(n, 0);
    out.complement = Matrix::Identity(n, n);
    return out;
  }
  Matrix stacked(n, n * static_cast<Index>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k)
    stacked.middleCols(static_cast<Index>(k) * n, n) = mats[k];
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullU);
  const RVector& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  const Index rank = decide_rank(s, n, tol.rank_tol_factor, data_scale);
  out.basis = svd.matrixU().leftCols(rank);
  out.complement = svd.matrixU().rightCols(n - rank);
  out.projection = out.basis * out.basis.adjoint();
  return out;
}

void add_projection_residuals(ConstructionReport& rep, const Tolerances& tol,
                              bool& ok) {
  const double idem = spectral_norm(rep.P * rep.P - rep.P);
  const double sadj = spectral_norm(Matrix(rep.P - rep.P.adjoint()));
  rep.residuals["projection_idempotent"] = idem;
  rep.residuals["projection_selfadjoint"] = sadj;
  ok = ok && idem <= tol.identity_tol && sadj <= tol.identity_tol;
}

double commutation_residual(const SuperMap& m, const Matrix& p) {
  double r = 0.0;
  for (const Matrix& im : m.images())
    r = std::max(r, spectral_norm(im * p - p * im));
  return r;
}

void require_derivation(const SuperMap& d, const SuperMap& sigma,
                        const Tolerances& tol, const char* who) {
  const DerivationCheck c = leibniz_residual(d, sigma, tol);
  if (!c.passed)
    throw precondition_error(std::string(who) +
                             ": d is not a sigma-derivation (residual " +
                             std::to_string(c.residual) + ")");
}

void require_star_linear(const SuperMap& m, const Tolerances& tol,
                         const char* who, const char* name) {
  const PredicateCheck c = is_star_linear(m, tol);
  if (!c.passed)
    throw precondition_error(std::string(who) + ": " + name +
                             " is not *-linear (residual " +
                             std::to_string(c.residual) + ")");
}

// Joint kernel of the images of d, as an orthonormal column basis.
Matrix joint_kernel(const std::vector<Matrix>& mats, Index n,
                    const Tolerances& tol) {
  if (mats.empty()) return Matrix::Identity(n, n);
  Matrix stacked(n * static_cast<Index>(mats.size()), n);
  for (std::size_t k = 0; k < mats.size(); ++k)
    stacked.middleRows(static_cast<Index>(k) * n, n) = mats[k];
  return nullspace(stacked, tol.rank_tol_factor, 0.0).basis;
}

}  // namespace

Matrix range_span_projection(const std::vector<Matrix>& mats, Index n,
                             const Tolerances& tol, double data_scale,
                             std::vector<double>* singular_values) {
  RangeSpan rs = range_span(mats, n, tol, data_scale);
  if (singular_values) *singular_values = rs.singular_values;
  return rs.projection;
}

ConstructionReport construct_sigma_thm32(const SuperMap& d,
                                         const SuperMap& sigma,
                                         const Tolerances& tol) {
  require_same_domain(d, sigma, "construct_sigma_thm32");
  require_derivation(d, sigma, tol, "construct_sigma_thm32");
  require_star_linear(d, tol, "construct_sigma_thm32", "d");

  const Index n = d.space_dim();
  const RangeSpan rs = range_span(d.images(), n, tol, 0.0);
  ConstructionReport rep;
  rep.P = rs.projection;
  rep.Sigma = right_compress(sigma, rep.P);
  rep.singular_values = rs.singular_values;

  bool ok = true;
  const DerivationCheck leib = leibniz_residual(d, rep.Sigma, tol);
  rep.residuals["leibniz"] = leib.residual;
  ok = ok && leib.passed;

  const double kernel_gap =
      subspace_gap(rs.complement, joint_kernel(d.images(), n, tol));
  rep.residuals["kernel_identity"] = kernel_gap;
  ok = ok && kernel_gap <= tol.identity_tol;

  add_projection_residuals(rep, tol, ok);
  rep.passed = ok;
  return rep;
}

ConstructionReport construct_sigma_thm33(const SuperMap& d,
                                         const SuperMap& sigma,
                                         const Tolerances& tol) {
  require_same_domain(d, sigma, "construct_sigma_thm33");
  require_star_linear(sigma, tol, "construct_sigma_thm33", "sigma");
  require_derivation(d, sigma, tol, "construct_sigma_thm33");

  const SuperMap ds = dstar(d);
  std::vector<Matrix> gens = d.images();
  gens.insert(gens.end(), ds.images().begin(), ds.images().end());
  const Index n = d.space_dim();
  const RangeSpan rs = range_span(gens, n, tol, 0.0);

  ConstructionReport rep;
  rep.P = rs.projection;
  rep.Sigma = right_compress(sigma, rep.P);
  rep.singular_values = rs.singular_values;

  bool ok = true;
  const DerivationCheck leib = leibniz_residual(d, rep.Sigma, tol);
  const DerivationCheck leib_star = leibniz_residual(ds, rep.Sigma, tol);
  rep.residuals["leibniz"] = leib.residual;
  rep.residuals["leibniz_star"] = leib_star.residual;
  ok = ok && leib.passed && leib_star.passed;

  add_projection_residuals(rep, tol, ok);
  rep.passed = ok;
  return rep;
}

ConstructionReport reduce_to_hom_prop34(const SuperMap& d,
                                        const SuperMap& sigma,
                                        const Tolerances& tol) {
  require_same_domain(d, sigma, "reduce_to_hom_prop34");
  require_star_linear(sigma, tol, "reduce_to_hom_prop34", "sigma");
  require_derivation(d, sigma, tol, "reduce_to_hom_prop34");

  const Index n = sigma.space_dim();
  const Index dim = sigma.dim();
  std::vector<Matrix> defects;
  defects.reserve(static_cast<std::size_t>(dim) * dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      defects.push_back(sigma.image_of_product(i, j) -
                        sigma.image(i) * sigma.image(j));

  // Defects are differences of O(s^2) products; rounding noise in them must
  // not register as rank, so the threshold is floored at that magnitude.
  const double s = map_scale(sigma);
  const RangeSpan rs = range_span(defects, n, tol, std::max(1.0, s * s));

  ConstructionReport rep;
  rep.P = Matrix::Identity(n, n) - rs.projection;
  rep.Sigma = right_compress(sigma, rep.P);
  rep.Dmap = right_compress(d, rep.P);
  rep.singular_values = rs.singular_values;

  bool ok = true;
  const PredicateCheck hom = is_homomorphism(rep.Sigma, tol);
  const PredicateCheck star = is_star_linear(rep.Sigma, tol);
  const DerivationCheck leib = leibniz_residual(*rep.Dmap, rep.Sigma, tol);
  rep.residuals["homomorphism"] = hom.residual;
  rep.residuals["star"] = star.residual;
  rep.residuals["leibniz"] = leib.residual;
  ok = ok && hom.passed && star.passed && leib.passed;

  const double comm_s = commutation_residual(sigma, rep.P);
  const double comm_d = commutation_residual(d, rep.P);
  rep.residuals["commutation_sigma"] = comm_s;
  rep.residuals["commutation_d"] = comm_d;
  ok = ok && comm_s <= tol.identity_tol * map_scale(sigma) &&
       comm_d <= tol.identity_tol * map_scale(d);

  if (is_star_linear(d, tol).passed) {
    const PredicateCheck star_d = is_star_linear(*rep.Dmap, tol);
    rep.residuals["star_d"] = star_d.residual;
    ok = ok && star_d.passed;
  }

  add_projection_residuals(rep, tol, ok);
  rep.passed = ok;
  return rep;
}

ConstructionReport reduce_general_prop36(const SuperMap& d,
                                         const SuperMap& sigma,
                                         const Tolerances& tol) {
  require_same_domain(d, sigma, "reduce_general_prop36");
  require_star_linear(d, tol, "reduce_general_prop36", "d");
  require_derivation(d, sigma, tol, "reduce_general_prop36");

  const DerivationCheck vs_star =
      leibniz_residual(d, star_conjugate(sigma), tol);
  const SuperMap mid = star_part(sigma);
  const DerivationCheck vs_mid = leibniz_residual(d, mid, tol);

  ConstructionReport rep = reduce_to_hom_prop34(d, mid, tol);
  rep.residuals["leibniz_sigma_star"] = vs_star.residual;
  rep.residuals["leibniz_mid"] = vs_mid.residual;
  rep.passed = rep.passed && vs_star.passed && vs_mid.passed;
  return rep;
}

MembershipVerdict projection_membership_rem35(const StarAlgebra& alg,
                                              const ConstructionReport& report,
                                              const SuperMap& sigma,
                                              const SuperMap& d,
                                              const Tolerances& tol) {
  for (const Matrix& im : sigma.images())
    if (!alg.contains(im, tol)) return MembershipVerdict::hypothesis_not_met;
  for (const Matrix& im : d.images())
    if (!alg.contains(im, tol)) return MembershipVerdict::hypothesis_not_met;
  return alg.contains(report.P, tol) ? MembershipVerdict::holds
                                     : MembershipVerdict::fails;
}

}  // namespace sdlab
