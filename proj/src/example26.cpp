#include "sdlab/example26.hpp"

#include "sdlab/randgen.hpp"

#include <string>
#include <vector>

namespace sdlab {

Example26Instance build_example26(Index grid_n, AlphaKind kind,
                                  std::uint64_t seed, const RMatrix* alpha_in) {
  if (grid_n < 5 || (grid_n - 1) % 4 != 0)
    throw spec_error("build_example26: grid_n must be 4m+1 with m >= 1, got " +
                     std::to_string(grid_n));
  const Index m = (grid_n - 1) / 4;

  Example26Instance inst;
  inst.grid_n = grid_n;
  inst.t.resize(grid_n);
  inst.h.resize(grid_n);
  for (Index i = 0; i < grid_n; ++i) {
    // Exact at the breakpoints: t_m = 0.5 and t_2m = 1 are exact divisions.
    inst.t(i) = 2.0 * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    inst.h(i) = inst.t(i) > 1.0 ? inst.t(i) - 1.0 : 0.0;
  }

  switch (kind) {
    case AlphaKind::zero:
      inst.alpha = RMatrix::Zero(m + 1, m + 1);
      break;
    case AlphaKind::random_seeded: {
      Rng rng(seed);
      inst.alpha = gaussian_real_matrix(rng, m + 1, m + 1);
      break;
    }
    case AlphaKind::explicit_matrix:
      if (!alpha_in)
        throw spec_error("build_example26: explicit alpha not supplied");
      if (alpha_in->rows() != m + 1 || alpha_in->cols() != m + 1)
        throw shape_error("build_example26: alpha must be " +
                          std::to_string(m + 1) + "x" + std::to_string(m + 1));
      inst.alpha = *alpha_in;
      break;
  }

  inst.alg = build_algebra(std::vector<Index>(grid_n, 1));

  std::vector<Matrix> sigma_images(grid_n), d_images(grid_n);
  for (Index j = 0; j < grid_n; ++j) {
    Matrix s = Matrix::Zero(grid_n, grid_n);
    for (Index i = 0; i < grid_n; ++i) {
      double v = 0.0;
      if (i <= m) {
        if (j <= m) v = inst.alpha(i, j);
      } else if (i < 2 * m) {
        if (j <= m) v += 2.0 * (1.0 - inst.t(i)) * inst.alpha(m, j);
        if (j == 2 * m) v += inst.t(i) - 0.5;
      } else {
        if (j == i) v = 0.5;
      }
      s(i, i) = Complex(v, 0.0);
    }
    sigma_images[j] = s;

    Matrix di = Matrix::Zero(grid_n, grid_n);
    di(j, j) = Complex(inst.h(j), 0.0);
    d_images[j] = di;
  }
  inst.sigma = supermap_from_images(inst.alg, std::move(sigma_images));
  inst.d = supermap_from_images(inst.alg, std::move(d_images));
  return inst;
}

}  // namespace sdlab
