#include "chiralmag/rng.hpp"

#include <cmath>

namespace chiralmag {

namespace {

constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;

inline void round_once(std::array<std::uint32_t, 4>& x,
                       const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * x[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * x[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

inline double to_unit_double(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t v =
      (static_cast<std::uint64_t>(hi) << 32) | static_cast<std::uint64_t>(lo);
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(
    const std::array<std::uint32_t, 4>& ctr,
    const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> x = ctr;
  std::array<std::uint32_t, 2> k = key;
  for (int r = 0; r < 10; ++r) {
    round_once(x, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return x;
}

std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint32_t stream,
                                   std::uint64_t counter) {
  const std::array<std::uint32_t, 4> ctr{
      static_cast<std::uint32_t>(counter),
      static_cast<std::uint32_t>(counter >> 32), stream, 0u};
  const std::array<std::uint32_t, 2> key{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto out = philox4x32(ctr, key);
  return {to_unit_double(out[0], out[1]), to_unit_double(out[2], out[3])};
}

Vec3 unit_sphere_sample(std::uint64_t seed, std::uint32_t stream,
                        std::uint64_t counter) {
  const auto u = uniform_pair(seed, stream, counter);
  const double z = 2.0 * u[0] - 1.0;
  const double phi = 2.0 * M_PI * u[1];
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace chiralmag
