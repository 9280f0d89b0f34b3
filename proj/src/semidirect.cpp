#include "sdlab/semidirect.hpp"

#include "sdlab/linalg.hpp"
#include "sdlab/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace sdlab {

SemidirectContext::SemidirectContext(SuperMap sigma, const Tolerances& tol)
    : sigma_(std::move(sigma)) {
  const PredicateCheck hom = is_homomorphism(sigma_, tol);
  if (!hom.passed)
    throw precondition_error(
        "SemidirectContext: sigma is not a homomorphism (residual " +
        std::to_string(hom.residual) + ")");
}

SemidirectElement make_element(const SemidirectContext& ctx, CVector a,
                               Matrix x) {
  if (a.size() != ctx.alg().dim())
    throw shape_error("make_element: coefficient length mismatch");
  const Index n = ctx.alg().space_dim();
  if (x.rows() != n || x.cols() != n)
    throw shape_error("make_element: x is not " + std::to_string(n) + "x" +
                      std::to_string(n));
  return SemidirectElement{std::move(a), std::move(x)};
}

SemidirectElement semidirect_mul(const SemidirectContext& ctx,
                                 const SemidirectElement& u,
                                 const SemidirectElement& v) {
  const StarAlgebra& alg = ctx.alg();
  if (u.a.size() != alg.dim() || v.a.size() != alg.dim())
    throw shape_error("semidirect_mul: coefficient length mismatch");
  SemidirectElement out;
  out.a = alg.multiply_coeffs(u.a, v.a);
  out.x = u.x * ctx.sigma().apply_coeffs(v.a) +
          ctx.sigma().apply_coeffs(u.a) * v.x;
  return out;
}

double element_norm(const SemidirectContext& ctx, const SemidirectElement& u) {
  return spectral_norm(ctx.alg().embed(u.a)) + spectral_norm(u.x);
}

SemidirectElement phi_d_apply(const SemidirectContext& ctx, const SuperMap& d,
                              const CVector& coeffs) {
  return make_element(ctx, coeffs, d.apply_coeffs(coeffs));
}

PhiReport phi_d_report(const SemidirectContext& ctx, const SuperMap& d,
                       const Tolerances& tol) {
  require_same_domain(d, ctx.sigma(), "phi_d_report");
  const DerivationCheck leib = leibniz_residual(d, ctx.sigma(), tol);
  if (!leib.passed)
    throw precondition_error(
        "phi_d_report: d is not a sigma-derivation (residual " +
        std::to_string(leib.residual) + ")");
  PhiReport rep;
  rep.scale = std::max(map_scale(d), map_scale(ctx.sigma()));
  const StarAlgebra& alg = ctx.alg();
  const Index dim = alg.dim();
  for (Index i = 0; i < dim; ++i) {
    CVector ei = CVector::Zero(dim);
    ei(i) = Complex(1.0, 0.0);
    const SemidirectElement ui = phi_d_apply(ctx, d, ei);
    for (Index j = 0; j < dim; ++j) {
      CVector ej = CVector::Zero(dim);
      ej(j) = Complex(1.0, 0.0);
      const SemidirectElement uj = phi_d_apply(ctx, d, ej);
      const SemidirectElement prod = semidirect_mul(ctx, ui, uj);
      const SemidirectElement img =
          phi_d_apply(ctx, d, alg.multiply_coeffs(ei, ej));
      const SemidirectElement diff{img.a - prod.a, img.x - prod.x};
      rep.hom_residual = std::max(rep.hom_residual, element_norm(ctx, diff));
    }
  }
  rep.passed = rep.hom_residual <= tol.identity_tol * rep.scale;
  return rep;
}

namespace {

// Unit-ball algebra element from raw coefficients; the tiny deflation keeps
// the spectral norm strictly below 1 despite rounding, so every evaluation
// point is feasible and the estimate stays a true lower bound.
CVector to_unit_ball(const StarAlgebra& alg, const CVector& raw) {
  const double s = spectral_norm(alg.embed(raw));
  if (!(s > 0.0)) return alg.identity_coeffs();
  return raw / (s * (1.0 + 1e-12));
}

}  // namespace

NormEstimate semidirect_norm_estimate(const SemidirectContext& ctx,
                                      const SemidirectElement& u,
                                      const NormBudget& budget) {
  if (budget.starts < 1 || budget.iters < 0 || budget.samples < 1)
    throw spec_error("semidirect_norm_estimate: budget must be positive");
  const StarAlgebra& alg = ctx.alg();
  if (u.a.size() != alg.dim())
    throw shape_error("semidirect_norm_estimate: coefficient length mismatch");
  const SuperMap& sigma = ctx.sigma();
  const Matrix& x = u.x;

  const auto eval_pair = [&](const CVector& a1, const CVector& a2) {
    const Matrix s1 = sigma.apply_coeffs(a1);
    const Matrix s2 = sigma.apply_coeffs(a2);
    const Matrix left = s1 * x;
    return std::max({spectral_norm(left), spectral_norm(Matrix(x * s2)),
                     spectral_norm(Matrix(left * s2))});
  };

  double sup = spectral_norm(x);
  for (Index t = 0; t < budget.starts; ++t) {
    CVector a1 = alg.identity_coeffs();
    CVector a2 = alg.identity_coeffs();
    if (t > 0) {
      Rng draw(substream(budget.seed, static_cast<std::uint64_t>(t)));
      a1 = to_unit_ball(alg, gaussian_coeffs(draw, alg.dim()));
      a2 = to_unit_ball(alg, gaussian_coeffs(draw, alg.dim()));
    }
    double cur = eval_pair(a1, a2);
    sup = std::max(sup, cur);
    for (Index r = 0; r < budget.iters; ++r) {
      for (int side = 0; side < 2; ++side) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(t) << 24) |
            (static_cast<std::uint64_t>(r) << 8) |
            static_cast<std::uint64_t>(side + 1);
        Rng draw(substream(budget.seed, key));
        CVector& target = (side == 0) ? a1 : a2;
        for (Index s = 0; s < budget.samples; ++s) {
          // Alternate fresh directions with local blends around the incumbent.
          CVector cand = gaussian_coeffs(draw, alg.dim());
          if (s % 2 == 1)
            cand = target + cand / static_cast<double>(s + 1);
          cand = to_unit_ball(alg, cand);
          const double val =
              (side == 0) ? eval_pair(cand, a2) : eval_pair(a1, cand);
          sup = std::max(sup, val);
          if (val > cur) {
            cur = val;
            target = cand;
          }
        }
      }
    }
  }

  NormEstimate out;
  out.value = spectral_norm(alg.embed(u.a)) + sup;
  out.lower_bound = true;
  return out;
}

}  // namespace sdlab
