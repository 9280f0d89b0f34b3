// Deterministic random source.  splitmix64 plus a fixed Box-Muller keeps
// draws byte-identical across platforms and standard libraries, which the
// reproducible-report contract needs (std::normal_distribution does not
// guarantee a sequence).

#pragma once

#include "sdlab/types.hpp"

#include <cstdint>

namespace sdlab {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1].
  double uniform() {
    const std::uint64_t bits = next_u64() >> 11;  // 53 bits
    return (static_cast<double>(bits) + 1.0) * 0x1p-53;
  }

  double normal();
  Complex cnormal();  // standard complex gaussian, E|z|^2 = 1

private:
  std::uint64_t state_;
};

// Mixes a stream id into a seed so substreams are independent.
std::uint64_t substream(std::uint64_t seed, std::uint64_t id);

Matrix gaussian_matrix(Rng& rng, Index n);
RMatrix gaussian_real_matrix(Rng& rng, Index rows, Index cols);
Matrix hermitian_gaussian(Rng& rng, Index n);
Matrix skew_adjoint_gaussian(Rng& rng, Index n);
CVector gaussian_coeffs(Rng& rng, Index d);

// Haar-flavored unitary via QR with the phase convention R(ii) > 0.
Matrix random_unitary(Rng& rng, Index n);

}  // namespace sdlab
