#include "chiralmag/snapshot_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <vector>

namespace chiralmag {

namespace {

constexpr char kMagic[8] = {'C', 'M', 'A', 'G', 'F', 'L', 'D', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>(v >> (8 * i)));
}

void put_f64(std::string& buf, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>(v >> (8 * i)));
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

double get_f64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

std::string header_bytes(const GridSpec& g, std::uint32_t ncomp) {
  std::string buf(kMagic, 8);
  put_u32(buf, kVersion);
  put_u32(buf, ncomp);
  put_u32(buf, static_cast<std::uint32_t>(g.nx));
  put_u32(buf, static_cast<std::uint32_t>(g.ny));
  put_u32(buf, static_cast<std::uint32_t>(g.nz));
  put_f64(buf, g.hx);
  put_f64(buf, g.hy);
  put_f64(buf, g.hz);
  put_f64(buf, g.length_scale_m);
  return buf;
}

void write_payload(const std::string& path, const std::string& header,
                   const double* data, std::size_t count) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("snapshot: cannot open " + path);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  std::string buf;
  buf.reserve(count * 8);
  for (std::size_t i = 0; i < count; ++i) put_f64(buf, data[i]);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("snapshot: write failed for " + path);
}

struct SnapHeader {
  GridSpec grid;
  std::uint32_t ncomp = 0;
};

SnapHeader read_header_and(const std::string& path,
                           std::vector<double>& payload) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path);
  unsigned char head[60];
  in.read(reinterpret_cast<char*>(head), sizeof(head));
  if (!in || std::memcmp(head, kMagic, 8) != 0)
    throw std::runtime_error("snapshot: bad magic in " + path);
  if (get_u32(head + 8) != kVersion)
    throw std::runtime_error("snapshot: unsupported version in " + path);
  SnapHeader h;
  h.ncomp = get_u32(head + 12);
  h.grid.nx = static_cast<int>(get_u32(head + 16));
  h.grid.ny = static_cast<int>(get_u32(head + 20));
  h.grid.nz = static_cast<int>(get_u32(head + 24));
  h.grid.hx = get_f64(head + 28);
  h.grid.hy = get_f64(head + 36);
  h.grid.hz = get_f64(head + 44);
  h.grid.length_scale_m = get_f64(head + 52);
  h.grid.validate();
  if (h.ncomp != 1 && h.ncomp != 3)
    throw std::runtime_error("snapshot: bad component count in " + path);

  const std::size_t count =
      static_cast<std::size_t>(h.ncomp) * h.grid.cell_count();
  std::vector<unsigned char> raw(count * 8);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (!in) throw std::runtime_error("snapshot: truncated payload in " + path);
  payload.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    payload[i] = get_f64(raw.data() + 8 * i);
  return h;
}

}  // namespace

void write_snapshot(const std::string& path, const VectorField& field) {
  write_payload(path, header_bytes(field.grid(), 3), field.raw().data(),
                field.raw().size());
}

void write_snapshot(const std::string& path, const ScalarField& field) {
  write_payload(path, header_bytes(field.grid(), 1), field.raw().data(),
                field.raw().size());
}

VectorField read_snapshot(const std::string& path) {
  std::vector<double> payload;
  const SnapHeader h = read_header_and(path, payload);
  if (h.ncomp != 3)
    throw std::runtime_error("snapshot: expected a 3-component field in " +
                             path);
  VectorField f(h.grid);
  f.raw() = std::move(payload);
  return f;
}

ScalarField read_scalar_snapshot(const std::string& path) {
  std::vector<double> payload;
  const SnapHeader h = read_header_and(path, payload);
  if (h.ncomp != 1)
    throw std::runtime_error("snapshot: expected a scalar field in " + path);
  ScalarField f(h.grid);
  f.raw() = std::move(payload);
  return f;
}

namespace {

void vtk_header(std::FILE* f, const GridSpec& g, const std::string& name) {
  const double nm = g.length_scale_m * 1e9;
  std::fprintf(f, "# vtk DataFile Version 3.0\n%s\nASCII\n", name.c_str());
  std::fprintf(f, "DATASET STRUCTURED_POINTS\n");
  std::fprintf(f, "DIMENSIONS %d %d %d\n", g.nx, g.ny, g.nz);
  std::fprintf(f, "ORIGIN %.9g %.9g %.9g\n", 0.5 * g.hx * nm, 0.5 * g.hy * nm,
               0.5 * g.hz * nm);
  std::fprintf(f, "SPACING %.9g %.9g %.9g\n", g.hx * nm, g.hy * nm, g.hz * nm);
  std::fprintf(f, "POINT_DATA %d\n", g.cell_count());
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

void write_vtk(const std::string& path, const VectorField& field,
               const std::string& name) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "w"));
  if (!f) throw std::runtime_error("vtk: cannot open " + path);
  vtk_header(f.get(), field.grid(), name);
  std::fprintf(f.get(), "VECTORS %s double\n", name.c_str());
  const int n = field.cells();
  for (int idx = 0; idx < n; ++idx)
    std::fprintf(f.get(), "%.9g %.9g %.9g\n", field.at(0, idx),
                 field.at(1, idx), field.at(2, idx));
}

void write_vtk(const std::string& path, const ScalarField& field,
               const std::string& name) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "w"));
  if (!f) throw std::runtime_error("vtk: cannot open " + path);
  vtk_header(f.get(), field.grid(), name);
  std::fprintf(f.get(), "SCALARS %s double 1\nLOOKUP_TABLE default\n",
               name.c_str());
  const int n = field.cells();
  for (int idx = 0; idx < n; ++idx)
    std::fprintf(f.get(), "%.9g\n", field.at(idx));
}

}  // namespace chiralmag
