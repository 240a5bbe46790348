#pragma once

#include <array>
#include <cstdint>

#include "chiralmag/vec3.hpp"

namespace chiralmag {

/// Philox-4x32-10 counter-based generator block function.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& ctr,
                                        const std::array<std::uint32_t, 2>& key);

/// Stream discipline used by stochastic initializers: the draw for a given
/// cell uses counter = (cell index lo, cell index hi, stream, 0) and
/// key = (seed lo, seed hi). Every cell's randomness is therefore a pure
/// function of (seed, stream, cell index): independent of traversal order,
/// selection masks, and platform.
std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint32_t stream,
                                   std::uint64_t counter);

/// Uniform point on the unit sphere for one cell (area-preserving map from
/// two uniforms).
Vec3 unit_sphere_sample(std::uint64_t seed, std::uint32_t stream,
                        std::uint64_t counter);

}  // namespace chiralmag
