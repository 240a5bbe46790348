#include "chiralmag/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace chiralmag {

namespace {

constexpr char kMagic[8] = {'C', 'M', 'A', 'G', 'C', 'K', 'P', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>(v >> (8 * i)));
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>(v >> (8 * i)));
}

void put_f64(std::string& buf, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  put_u64(buf, v);
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

double get_f64(const unsigned char* p) {
  const std::uint64_t v = get_u64(p);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

void put_field(std::string& buf, const VectorField& f) {
  for (double d : f.raw()) put_f64(buf, d);
}

void get_field(const unsigned char* p, VectorField& f) {
  auto& raw = f.raw();
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = get_f64(p + 8 * i);
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void write_checkpoint(const std::string& path, const Checkpoint& ckp) {
  const GridSpec& g = ckp.state.m_curr.grid();
  std::string buf(kMagic, 8);
  put_u32(buf, kVersion);
  put_u64(buf, ckp.config_hash);
  put_u64(buf, ckp.seed);
  put_u64(buf, static_cast<std::uint64_t>(ckp.state.step));
  put_u32(buf, ckp.state.has_history ? 1u : 0u);
  put_u32(buf, static_cast<std::uint32_t>(g.nx));
  put_u32(buf, static_cast<std::uint32_t>(g.ny));
  put_u32(buf, static_cast<std::uint32_t>(g.nz));
  put_f64(buf, g.hx);
  put_f64(buf, g.hy);
  put_f64(buf, g.hz);
  put_f64(buf, g.length_scale_m);
  put_field(buf, ckp.state.m_curr);
  put_field(buf, ckp.state.m_prev);
  put_field(buf, ckp.state.hhat_curr);
  put_field(buf, ckp.state.hhat_prev);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

Checkpoint read_checkpoint(const std::string& path,
                           std::uint64_t expected_config_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);

  constexpr std::size_t kHead = 8 + 4 + 8 + 8 + 8 + 4 + 12 + 32;
  unsigned char head[kHead];
  in.read(reinterpret_cast<char*>(head), sizeof(head));
  if (!in || std::memcmp(head, kMagic, 8) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  if (get_u32(head + 8) != kVersion)
    throw std::runtime_error("checkpoint: unsupported version in " + path);

  Checkpoint ckp;
  ckp.config_hash = get_u64(head + 12);
  ckp.seed = get_u64(head + 20);
  ckp.state.step = static_cast<long long>(get_u64(head + 28));
  ckp.state.has_history = get_u32(head + 36) != 0;

  GridSpec g;
  g.nx = static_cast<int>(get_u32(head + 40));
  g.ny = static_cast<int>(get_u32(head + 44));
  g.nz = static_cast<int>(get_u32(head + 48));
  g.hx = get_f64(head + 52);
  g.hy = get_f64(head + 60);
  g.hz = get_f64(head + 68);
  g.length_scale_m = get_f64(head + 76);
  g.validate();

  if (ckp.config_hash != expected_config_hash)
    throw std::runtime_error(
        "checkpoint: scenario hash mismatch; this file was produced by a "
        "different configuration and cannot resume the current one");

  const std::size_t per_field = static_cast<std::size_t>(g.cell_count()) * 24;
  std::vector<unsigned char> raw(4 * per_field);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (!in) throw std::runtime_error("checkpoint: truncated payload in " + path);

  ckp.state.m_curr = VectorField(g);
  ckp.state.m_prev = VectorField(g);
  ckp.state.hhat_curr = VectorField(g);
  ckp.state.hhat_prev = VectorField(g);
  get_field(raw.data() + 0 * per_field, ckp.state.m_curr);
  get_field(raw.data() + 1 * per_field, ckp.state.m_prev);
  get_field(raw.data() + 2 * per_field, ckp.state.hhat_curr);
  get_field(raw.data() + 3 * per_field, ckp.state.hhat_prev);
  return ckp;
}

}  // namespace chiralmag
