// Projection-based constructions: compress sigma (and d) onto the range
// span of the derivation's images or onto the orthocomplement of sigma's
// multiplicativity defects, and verify every identity the construction
// promises.  Reports carry the residual table and the singular values of
// the stacked matrix behind the rank decision.

#pragma once

#include "sdlab/derivations.hpp"
#include "sdlab/supermap.hpp"
#include "sdlab/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sdlab {

struct ConstructionReport {
  Matrix P;  // orthogonal projection
  SuperMap Sigma;
  std::optional<SuperMap> Dmap;
  std::map<std::string, double> residuals;
  std::vector<double> singular_values;
  bool passed = false;
};

// Orthogonal projection onto the column span of [mats[0] | mats[1] | ...].
// n fixes the ambient dimension (an empty set yields the zero projection).
// data_scale floors the rank threshold for stacks that are differences of
// O(data_scale) quantities, so rounding noise cannot masquerade as rank;
// pass 0 for exact input data (the threshold is then purely relative).
Matrix range_span_projection(const std::vector<Matrix>& mats, Index n,
                             const Tolerances& tol, double data_scale = 0.0,
                             std::vector<double>* singular_values = nullptr);

// P = projection onto span{d(E_i)}, Sigma = sigma(.)P.  Requires d to be a
// *-preserving sigma-derivation.  kernel_identity reports the principal
// angle gap between range(I - P) and the joint kernel of the d(E_i).
ConstructionReport construct_sigma_thm32(const SuperMap& d,
                                         const SuperMap& sigma,
                                         const Tolerances& tol);

// P over span{d(E_i)} and {d*(E_i)}; requires sigma *-linear and d a
// sigma-derivation; both d and d* are checked against the compressed map.
ConstructionReport construct_sigma_thm33(const SuperMap& d,
                                         const SuperMap& sigma,
                                         const Tolerances& tol);

// P = projection onto the joint kernel of sigma's multiplicativity defects
// sigma(E_i E_j) - sigma(E_i) sigma(E_j); Sigma = sigma(.)P becomes a
// *-homomorphism and Dmap = d(.)P a Sigma-derivation, with both P-commutation
// residuals reported.
ConstructionReport reduce_to_hom_prop34(const SuperMap& d,
                                        const SuperMap& sigma,
                                        const Tolerances& tol);

// For *-preserving d: checks that d also satisfies Leibniz against sigma*
// and against (sigma + sigma*)/2, then reduces via the *-linear midpoint.
ConstructionReport reduce_general_prop36(const SuperMap& d,
                                         const SuperMap& sigma,
                                         const Tolerances& tol);

enum class MembershipVerdict { holds, fails, hypothesis_not_met };

// When sigma and d map into the algebra (the hypothesis), the projection
// from reduce_to_hom_prop34 must again lie in the algebra.
MembershipVerdict projection_membership_rem35(const StarAlgebra& alg,
                                              const ConstructionReport& report,
                                              const SuperMap& sigma,
                                              const SuperMap& d,
                                              const Tolerances& tol);

}  // namespace sdlab
