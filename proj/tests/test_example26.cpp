#include "sdlab/example26.hpp"

#include "doctest.h"

#include "sdlab/constructions.hpp"
#include "sdlab/derivations.hpp"
#include "sdlab/linalg.hpp"

using namespace sdlab;

namespace {
const Tolerances kTol{};
}

TEST_SUITE("example26") {

TEST_CASE("grid and weight samples are exact at the breakpoints") {
  const auto inst = build_example26(5, AlphaKind::zero);
  CHECK(inst.grid_n == 5);
  REQUIRE(inst.t.size() == 5);
  // t = 0, 1/2, 1, 3/2, 2 exactly: the 4m+1 grid puts the breakpoints on
  // dyadic points.
  CHECK(inst.t(0) == 0.0);
  CHECK(inst.t(1) == 0.5);
  CHECK(inst.t(2) == 1.0);
  CHECK(inst.t(3) == 1.5);
  CHECK(inst.t(4) == 2.0);
  CHECK(inst.h(0) == 0.0);
  CHECK(inst.h(1) == 0.0);
  CHECK(inst.h(2) == 0.0);  // h = max(0, t-1) vanishes at t = 1
  CHECK(inst.h(3) == 0.5);
  CHECK(inst.h(4) == 1.0);

  CHECK(inst.alg.space_dim() == 5);
  CHECK(inst.alg.dim() == 5);  // diagonal algebra: all blocks are 1x1
}

TEST_CASE("grid size must have the form 4m+1") {
  CHECK_THROWS_AS((void)build_example26(8, AlphaKind::zero), spec_error);
  CHECK_THROWS_AS((void)build_example26(4, AlphaKind::zero), spec_error);
  CHECK_THROWS_AS((void)build_example26(1, AlphaKind::zero), spec_error);
  CHECK_NOTHROW((void)build_example26(13, AlphaKind::zero));
}

TEST_CASE("explicit alpha must be (m+1) x (m+1)") {
  const RMatrix good = RMatrix::Identity(3, 3);  // m = 2 for grid_n = 9
  CHECK_NOTHROW(
      (void)build_example26(9, AlphaKind::explicit_matrix, 0, &good));
  const RMatrix bad = RMatrix::Identity(2, 2);
  CHECK_THROWS_AS(
      (void)build_example26(9, AlphaKind::explicit_matrix, 0, &bad),
      shape_error);
  CHECK_THROWS_AS(
      (void)build_example26(9, AlphaKind::explicit_matrix, 0, nullptr),
      spec_error);
}

TEST_CASE("d multiplies by h and is a *-preserving sigma-derivation") {
  for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
    const auto inst = build_example26(9, AlphaKind::random_seeded, seed);
    for (Index k = 0; k < inst.alg.dim(); ++k) {
      const Matrix expect = inst.h(k) * inst.alg.basis_element(k);
      CHECK((inst.d.image(k) - expect).norm() == 0.0);
    }
    CHECK(is_star_linear(inst.d, kTol).passed);
    // The Leibniz identity holds exactly: products of diagonal units are
    // units, and the branch split makes sigma diagonal.
    const auto check = leibniz_residual(inst.d, inst.sigma, kTol);
    CHECK(check.passed);
    CHECK(check.residual == 0.0);
  }
}

TEST_CASE("sigma branches act as specified") {
  const auto inst = build_example26(9, AlphaKind::zero);  // m = 2
  // Upper branch: sigma fixes the t > 1 points up to the factor 1/2 (the
  // j = 2m image additionally carries the middle-branch ramp).
  for (Index j = 5; j < 9; ++j) {
    const Matrix expect = 0.5 * inst.alg.basis_element(j);
    CHECK((inst.sigma.image(j) - expect).norm() == 0.0);
  }
  // With alpha = 0 the lower branch kills the t <= 1/2 points.
  for (Index j = 0; j <= 2; ++j) CHECK(inst.sigma.image(j).norm() == 0.0);
  // Middle branch of sigma(E_4): entries 2(1-t_i) alpha(m, j) vanish for
  // alpha = 0, leaving the (t_i - 1/2) ramp into the j = 2m column; that
  // image is diagonal and supported strictly between 1/2 and 1, plus the
  // fixed point at t = 1.
  const Matrix mid = inst.sigma.image(4);
  CHECK(std::abs(mid(3, 3) - Complex(0.25, 0)) == 0.0);  // t = 3/4 ramp
  CHECK(std::abs(mid(4, 4) - Complex(0.5, 0)) == 0.0);   // t = 1 endpoint
  CHECK(std::abs(mid(2, 2)) == 0.0);                     // t = 1/2 endpoint
}

TEST_CASE("thm32 recovers the support indicator of h") {
  for (std::uint64_t seed : {3ull, 4ull}) {
    const auto inst = build_example26(9, AlphaKind::random_seeded, seed);
    const auto rep = construct_sigma_thm32(inst.d, inst.sigma, kTol);
    CHECK(rep.passed);
    Matrix indicator = Matrix::Zero(9, 9);
    for (Index i = 0; i < 9; ++i)
      if (inst.t(i) > 1.0) indicator(i, i) = 1.0;
    CHECK((rep.P - indicator).norm() <= 1e-12);
    CHECK(rep.residuals.at("kernel_identity") <= 1e-12);

    // On the support, Sigma acts as multiplication by 1/2: d passes the
    // Leibniz identity against it with zero defect.
    for (Index k = 0; k < 9; ++k) {
      const Matrix expect = 0.5 * indicator * inst.alg.basis_element(k);
      CHECK((rep.Sigma.image(k) * indicator - expect).norm() <= 1e-12);
    }
    const auto half_check = leibniz_residual(inst.d, rep.Sigma, kTol);
    CHECK(half_check.passed);
  }
}

TEST_CASE("prop34 with alpha = 0 reduces to the zero pair on t <= 1/2") {
  const auto inst = build_example26(9, AlphaKind::zero);
  REQUIRE(is_star_linear(inst.sigma, kTol).passed);
  const auto rep = reduce_to_hom_prop34(inst.d, inst.sigma, kTol);
  CHECK(rep.passed);

  // The defect kernel is the span of the grid points with t <= 1/2.
  Matrix low = Matrix::Zero(9, 9);
  for (Index i = 0; i < 9; ++i)
    if (inst.t(i) <= 0.5) low(i, i) = 1.0;
  CHECK((rep.P - low).norm() <= 1e-10);

  // h and the upper sigma branches vanish there.
  REQUIRE(rep.Dmap.has_value());
  for (Index k = 0; k < 9; ++k) {
    CHECK(rep.Sigma.image(k).norm() <= 1e-12);
    CHECK(rep.Dmap->image(k).norm() <= 1e-12);
  }
}

TEST_CASE("prop36 accepts the random-alpha instance end to end") {
  const auto inst = build_example26(9, AlphaKind::random_seeded, 12);
  const auto rep = reduce_general_prop36(inst.d, inst.sigma, kTol);
  CHECK(rep.passed);
  CHECK(rep.residuals.at("leibniz_sigma_star") <= 1e-9);
  CHECK(rep.residuals.at("leibniz_mid") <= 1e-9);
}

TEST_CASE("alpha only enters the lower-left action") {
  // Two different alphas agree on every image except the lower branch
  // block and the middle ramp's alpha term.
  const auto zero = build_example26(9, AlphaKind::zero);
  const auto rnd = build_example26(9, AlphaKind::random_seeded, 5);
  for (Index j = 4; j < 9; ++j)
    CHECK((zero.sigma.image(j) - rnd.sigma.image(j)).norm() == 0.0);
  bool differs = false;
  for (Index j = 0; j <= 2; ++j)
    differs = differs || (zero.sigma.image(j) - rnd.sigma.image(j)).norm() > 0;
  CHECK(differs);
}

}  // TEST_SUITE
