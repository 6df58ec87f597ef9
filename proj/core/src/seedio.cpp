#include "nao/seedio.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "nao/errors.hpp"

namespace nao {

namespace {

constexpr char kMagic[4] = {'N', 'A', 'O', 'S'};
constexpr std::uint8_t kVersion = 1;

[[noreturn]] void format_error(const std::string& what, std::uint64_t offset) {
  throw Error(ErrorKind::format,
              what + " (byte offset " + std::to_string(offset) + ")");
}

// All multi-byte fields are serialized LSB-first, independent of host order.
void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i]))
         << (8 * i);
  return v;
}
std::uint64_t get_u64(const std::string& in, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i]))
         << (8 * i);
  return v;
}

}  // namespace

void write_seedset(const std::filesystem::path& path, const SeedSet& set) {
  if (set.d < 1) throw_invalid("write_seedset: dimension must be >= 1");
  if (set.seeds.empty()) throw_invalid("write_seedset: empty seed set");
  for (const auto& z : set.seeds)
    if (z.size() != set.d) throw_invalid("write_seedset: dimension mismatch");

  std::string buffer;
  const std::size_t value_size = set.dtype == Dtype::f64 ? 8 : 4;
  buffer.reserve(14 + value_size * set.seeds.size() *
                          static_cast<std::size_t>(set.d));
  buffer.append(kMagic, 4);
  buffer.push_back(static_cast<char>(kVersion));
  buffer.push_back(static_cast<char>(set.dtype));
  put_u32(buffer, static_cast<std::uint32_t>(set.d));
  put_u32(buffer, static_cast<std::uint32_t>(set.seeds.size()));
  for (const auto& z : set.seeds) {
    for (std::int64_t i = 0; i < set.d; ++i) {
      if (set.dtype == Dtype::f64) {
        put_u64(buffer, std::bit_cast<std::uint64_t>(z[i]));
      } else {
        const float f = static_cast<float>(z[i]);
        put_u32(buffer, std::bit_cast<std::uint32_t>(f));
      }
    }
  }

  const auto temp = path.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw_invalid("write_seedset: cannot open " + temp);
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (!out) throw_invalid("write_seedset: short write to " + temp);
  }
  std::filesystem::rename(temp, path);
}

SeedSet read_seedset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_invalid("read_seedset: cannot open " + path.string());
  std::string buffer((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());

  if (buffer.size() < 14) format_error("truncated header", buffer.size());
  if (std::memcmp(buffer.data(), kMagic, 4) != 0)
    format_error("bad magic, expected \"NAOS\"", 0);
  if (static_cast<std::uint8_t>(buffer[4]) != kVersion)
    format_error("unsupported version", 4);
  const auto dtype_byte = static_cast<std::uint8_t>(buffer[5]);
  if (dtype_byte > 1) format_error("unknown dtype tag", 5);

  SeedSet set;
  set.dtype = static_cast<Dtype>(dtype_byte);
  const std::uint32_t d = get_u32(buffer, 6);
  const std::uint32_t count = get_u32(buffer, 10);
  if (d == 0) format_error("dimension must be positive", 6);
  if (count == 0) format_error("count must be positive", 10);
  set.d = d;

  const std::size_t value_size = set.dtype == Dtype::f64 ? 8 : 4;
  const std::size_t expected =
      14 + value_size * static_cast<std::size_t>(d) * count;
  if (buffer.size() != expected)
    format_error("payload size mismatch", buffer.size());

  set.seeds.reserve(count);
  std::size_t pos = 14;
  for (std::uint32_t s = 0; s < count; ++s) {
    Vector z(d);
    for (std::uint32_t i = 0; i < d; ++i) {
      if (set.dtype == Dtype::f64) {
        z[i] = std::bit_cast<double>(get_u64(buffer, pos));
        pos += 8;
      } else {
        z[i] = static_cast<double>(
            std::bit_cast<float>(get_u32(buffer, pos)));
        pos += 4;
      }
    }
    set.seeds.push_back(std::move(z));
  }
  return set;
}

void write_path_csv(const std::filesystem::path& path,
                    const PiecewisePath& piecewise) {
  const auto d = piecewise.dim();
  if (d > 64)
    throw_invalid("write_path_csv: CSV dumps are limited to d <= 64");
  std::string buffer = "index";
  for (std::int64_t i = 0; i < d; ++i)
    buffer += ",c" + std::to_string(i);
  buffer += "\n";
  char cell[64];
  for (std::int64_t col = 0; col < piecewise.points.cols(); ++col) {
    buffer += std::to_string(col);
    for (std::int64_t row = 0; row < d; ++row) {
      std::snprintf(cell, sizeof(cell), ",%.17g", piecewise.points(row, col));
      buffer += cell;
    }
    buffer += "\n";
  }
  const auto temp = path.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw_invalid("write_path_csv: cannot open " + temp);
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (!out) throw_invalid("write_path_csv: short write to " + temp);
  }
  std::filesystem::rename(temp, path);
}

SeedSet seedset_from_path(const PiecewisePath& piecewise, Dtype dtype) {
  SeedSet set;
  set.d = piecewise.dim();
  set.dtype = dtype;
  set.seeds.reserve(piecewise.points.cols());
  for (std::int64_t col = 0; col < piecewise.points.cols(); ++col)
    set.seeds.push_back(piecewise.points.col(col));
  return set;
}

SeedSet seedset_from_vectors(std::vector<Vector> seeds, Dtype dtype) {
  SeedSet set;
  if (seeds.empty()) throw_invalid("seedset_from_vectors: empty seed list");
  set.d = seeds.front().size();
  set.dtype = dtype;
  set.seeds = std::move(seeds);
  return set;
}

}  // namespace nao
