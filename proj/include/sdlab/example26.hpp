// Discretized weighted-shift style instance on the diagonal algebra over a
// uniform grid on [0,2]: d(f) = f.h with h = max(0, t-1), and a sigma whose
// lower branch is an arbitrary linear action on the samples at t <= 1/2.
// The grid has the form 4m+1 so the breakpoints 1/2 and 1 are grid points
// and the branch formulas agree there exactly.

#pragma once

#include "sdlab/supermap.hpp"
#include "sdlab/types.hpp"

#include <cstdint>

namespace sdlab {

struct Example26Instance {
  Index grid_n = 0;
  RVector t;      // grid points 2i/(grid_n-1)
  RVector h;      // max(0, t-1) samples
  RMatrix alpha;  // (m+1)x(m+1) action on the samples at t <= 1/2
  StarAlgebra alg;
  SuperMap sigma;
  SuperMap d;
};

enum class AlphaKind { zero, random_seeded, explicit_matrix };

// grid_n must be 4m+1 with m >= 1.  For random_seeded, alpha is a real
// gaussian matrix drawn from the seed; for explicit_matrix, alpha_in must
// be (m+1)x(m+1).
Example26Instance build_example26(Index grid_n, AlphaKind kind,
                                  std::uint64_t seed = 0,
                                  const RMatrix* alpha_in = nullptr);

}  // namespace sdlab
