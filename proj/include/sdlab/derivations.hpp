// Twisted derivations d(ab) = d(a)sigma(b) + tau(a)d(b): residual checks,
// inner derivations, the nullspace solver for the full derivation space,
// annihilators, d*, and the (sigma,tau) -> (tau,sigma) symmetrization.

#pragma once

#include "sdlab/supermap.hpp"
#include "sdlab/types.hpp"

#include <array>
#include <utility>
#include <vector>

namespace sdlab {

struct DerivationCheck {
  double residual = 0.0;
  bool passed = true;
  double scale = 1.0;  // max(1, largest image spectral norm involved)
  // Basis indices attaining the residual; worst[2] = -1 for pair identities.
  std::array<Index, 3> worst{{-1, -1, -1}};
};

// residual = max_{i,j} || d(E_i E_j) - d(E_i) sigma(E_j) - sigma(E_i) d(E_j) ||.
DerivationCheck leibniz_residual(const SuperMap& d, const SuperMap& sigma,
                                 const Tolerances& tol);

// residual = max_{i,j} || d(E_i E_j) - d(E_i) sigma(E_j) - tau(E_i) d(E_j) ||.
DerivationCheck sigma_tau_residual(const SuperMap& d, const SuperMap& sigma,
                                   const SuperMap& tau, const Tolerances& tol);

// a -> x sigma(a) - tau(a) x.  Passes sigma_tau_residual when sigma and
// tau are homomorphisms (reported by the caller, not enforced here).
SuperMap inner_derivation(const SuperMap& sigma, const SuperMap& tau,
                          const Matrix& x);

// Orthonormal basis (trace inner product on matricized maps) of the
// solution space of the (sigma,tau) Leibniz equation, viewed as a linear
// system in the images d(E_k).  With star_constrained the real-linear
// condition d(A*) = d(A)* is adjoined and the system is solved over the
// reals on (real, imaginary) parts; the returned basis is then orthonormal
// over the reals.  Empty result means d = 0 is the only solution.
std::vector<SuperMap> derivation_space(const SuperMap& sigma,
                                       const SuperMap& tau,
                                       bool star_constrained,
                                       const Tolerances& tol);
std::vector<SuperMap> derivation_space(const SuperMap& sigma,
                                       bool star_constrained,
                                       const Tolerances& tol);

// residual over basis triples (i,j,k) of
// || d(E_k)(sigma(E_i E_j) - sigma(E_i)sigma(E_j))
//    - (sigma(E_k E_i) - sigma(E_k)sigma(E_i)) d(E_j) ||.
DerivationCheck lemma22_residual(const SuperMap& d, const SuperMap& sigma,
                                 const Tolerances& tol);

// d*(A) = d(A*)*; same construction as star_conjugate, derivation vocabulary.
SuperMap dstar(const SuperMap& d);

enum class AnnihilatorSide { right, left, both };

// Orthonormal basis (trace inner product) of
//   right: {X : eX = 0 for all e}, left: {X : Xe = 0}, both: intersection.
// n fixes the ambient dimension (needed when gens is empty, which yields
// the full n^2-dimensional space).
std::vector<Matrix> annihilators(const std::vector<Matrix>& gens,
                                 AnnihilatorSide side, Index n,
                                 const Tolerances& tol);

struct SymmetrizeReport {
  DerivationCheck forward;  // d against (sigma, tau)
  DerivationCheck swapped;  // d against (tau, sigma)
  DerivationCheck mid;      // d against (sigma + tau)/2
};

// Requires sigma, tau, d all *-linear (the swap argument uses the
// involution); throws precondition_error otherwise.  Returns (sigma+tau)/2
// and the three residuals.
std::pair<SuperMap, SymmetrizeReport> symmetrize(const SuperMap& d,
                                                 const SuperMap& sigma,
                                                 const SuperMap& tau,
                                                 const Tolerances& tol);

}  // namespace sdlab
