#pragma once

#include <cstdint>
#include <vector>

namespace nao {

// Deterministic xoshiro256++ stream (Blackman & Vigna, 2019 constants),
// seeded through splitmix64. The integer stream and the uniform doubles are
// bit-identical on every platform; Gaussian values go through libm
// (sqrt/log/cos/sin) and are bit-stable per build environment.
//
// The state is a single-consumer value type: copy it to fork a stream,
// never share one instance across threads.
struct RngState {
  std::uint64_t s[4];
  // Box-Muller produces values in pairs; the second one is cached here.
  bool has_spare = false;
  double spare = 0.0;

  explicit RngState(std::uint64_t seed = 0) { reseed(seed); }

  void reseed(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53 usable bits.
  double next_uniform();

  // Standard normal via Box-Muller, caching the paired value.
  double next_gaussian();
};

// `count` i.i.d. standard normals drawn from `rng`.
std::vector<double> gaussian_stream(RngState& rng, std::int64_t count);

}  // namespace nao
