#pragma once

#include <cstdint>
#include <string>

#include "chiralmag/stepper.hpp"

namespace chiralmag {

/// Restart file for an Integrator mid-run.
///
/// Layout (little endian):
///   bytes 0..7    magic "CMAGCKP1"
///   u32           version (1)
///   u64           config hash (FNV-1a over the canonical scenario text)
///   u64           seed
///   u64           step index
///   u32           has_history flag
///   u32 x3        nx, ny, nz
///   f64 x3        hx, hy, hz
///   f64           length scale (m)
///   f64 x 4*3*n   m_curr, m_prev, hhat_curr, hhat_prev payloads,
///                 each component-major, x fastest
///
/// Payloads are the integrator state verbatim, so save/restore is bitwise
/// and a resumed run reproduces the uninterrupted one exactly.
struct Checkpoint {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  Integrator::State state;
};

/// FNV-1a 64-bit over a byte string. Used to tie checkpoints to the scenario
/// text that produced them.
std::uint64_t fnv1a64(const std::string& text);

void write_checkpoint(const std::string& path, const Checkpoint& ckp);

/// Reads a checkpoint and verifies the stored config hash.
/// Throws std::runtime_error on format problems or on a hash mismatch
/// (resuming under a different scenario is refused, not silently accepted).
Checkpoint read_checkpoint(const std::string& path,
                           std::uint64_t expected_config_hash);

}  // namespace chiralmag
