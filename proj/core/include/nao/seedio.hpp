#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "nao/chi_prior.hpp"
#include "nao/path.hpp"

namespace nao {

enum class Dtype : std::uint8_t { f64 = 0, f32 = 1 };

// Binary container for seed vectors. On disk: magic "NAOS", version byte
// (1), dtype byte (0 = f64, 1 = f32), u32 LE dimension, u32 LE count, then
// count * dimension values little-endian, seed-major. No compression.
struct SeedSet {
  std::int64_t d = 0;
  Dtype dtype = Dtype::f64;
  std::vector<Vector> seeds;

  std::int64_t count() const { return static_cast<std::int64_t>(seeds.size()); }
};

// Whole-file atomic: writes a sibling temp file, then renames. f32 sets are
// quantized on write.
void write_seedset(const std::filesystem::path& path, const SeedSet& set);

// Malformed input (bad magic, version, dtype, size) raises a format error
// naming the byte offset.
SeedSet read_seedset(const std::filesystem::path& path);

// CSV dump with header "index,c0,c1,...,c{d-1}". Only for d <= 64; larger
// paths use the binary format.
void write_path_csv(const std::filesystem::path& path,
                    const PiecewisePath& piecewise);

SeedSet seedset_from_path(const PiecewisePath& piecewise,
                          Dtype dtype = Dtype::f64);
SeedSet seedset_from_vectors(std::vector<Vector> seeds,
                             Dtype dtype = Dtype::f64);

}  // namespace nao
