#include "nao/rng.hpp"

#include <cmath>
#include <numbers>

#include "nao/errors.hpp"

namespace nao {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

void RngState::reseed(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s) word = splitmix64(sm);
  has_spare = false;
  spare = 0.0;
}

std::uint64_t RngState::next_u64() {
  const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
  const std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = rotl(s[3], 45);
  return result;
}

double RngState::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngState::next_gaussian() {
  if (has_spare) {
    has_spare = false;
    return spare;
  }
  // u1 in (0, 1] so that log(u1) is finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare = radius * std::sin(angle);
  has_spare = true;
  return radius * std::cos(angle);
}

std::vector<double> gaussian_stream(RngState& rng, std::int64_t count) {
  if (count < 1) throw_invalid("gaussian_stream: count must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(count));
  for (auto& v : values) v = rng.next_gaussian();
  return values;
}

}  // namespace nao
