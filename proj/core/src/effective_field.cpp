#include "chiralmag/effective_field.hpp"

#include <cmath>

namespace chiralmag {

namespace {

void add_local_pulse(const VectorField& m, const DriveSpec& drive,
                     const LocalFieldPulse& p, double t_ps, VectorField& out) {
  const GridSpec& gr = m.grid();
  const Vec3 h = p.amplitude_T * drive.scales.tesla_to_ms;
  const double dt_s = (t_ps - p.on_ps) * 1e-12;
  const Vec3 center = p.center + p.velocity_m_s * (dt_s * drive.scales.inv_length_L);
  const Vec3 lo = center - p.half_width;
  const Vec3 hi = center + p.half_width;
  for (int k = 0; k < gr.nz; ++k) {
    const double z = gr.z_center(k);
    if (z < lo.z || z > hi.z) continue;
    for (int j = 0; j < gr.ny; ++j) {
      const double y = gr.y_center(j);
      if (y < lo.y || y > hi.y) continue;
      for (int i = 0; i < gr.nx; ++i) {
        const double x = gr.x_center(i);
        if (x < lo.x || x > hi.x) continue;
        const int idx = gr.index(i, j, k);
        out.at(0, idx) += h.x;
        out.at(1, idx) += h.y;
        out.at(2, idx) += h.z;
      }
    }
  }
}

void add_stt_pulse(const VectorField& m, const GhostField& g,
                   const DriveSpec& drive, const SttPulse& p,
                   VectorField& out) {
  const GridSpec& gr = m.grid();
  const double len = norm(p.direction);
  if (!(len > 0.0)) return;
  const Vec3 jhat = p.direction * (1.0 / len);
  // u = -bJ, so the shared prefactor b J / (mu0 gamma Ms L) equals -u c_t.
  const double coeff = -p.u_m_s * drive.scales.transport_coeff;
  for (int k = 0; k < gr.nz; ++k)
    for (int j = 0; j < gr.ny; ++j)
      for (int i = 0; i < gr.nx; ++i) {
        Vec3 adv;  // (jhat . grad) m
        for (int c = 0; c < 3; ++c)
          adv[c] = jhat.x * ghost_derivative(g, c, 0, i, j, k) +
                   jhat.y * ghost_derivative(g, c, 1, i, j, k) +
                   jhat.z * ghost_derivative(g, c, 2, i, j, k);
        const int idx = gr.index(i, j, k);
        const Vec3 mm = m.vec(idx);
        const Vec3 term = coeff * (cross(mm, adv) + p.xi * adv);
        out.at(0, idx) += term.x;
        out.at(1, idx) += term.y;
        out.at(2, idx) += term.z;
      }
}

}  // namespace

void local_field_hhat(const VectorField& m, const DimensionlessParams& params,
                      const DriveSpec& drive, double t_ps, VectorField& out) {
  const GridSpec& gr = m.grid();
  if (!out.grid().same_shape(gr)) out = VectorField(gr);
  out.fill(0.0);

  const int n = m.cells();
  if (params.q != 0.0) {
    const double* m2 = m.component(1);
    const double* m3 = m.component(2);
    double* o2 = out.component(1);
    double* o3 = out.component(2);
    for (int idx = 0; idx < n; ++idx) {
      o2[idx] -= params.q * m2[idx];
      o3[idx] -= params.q * m3[idx];
    }
  }

  const Vec3 he = drive.uniform_h;
  if (he.x != 0.0 || he.y != 0.0 || he.z != 0.0) {
    for (int c = 0; c < 3; ++c) {
      double* o = out.component(c);
      for (int idx = 0; idx < n; ++idx) o[idx] += he[c];
    }
  }

  for (const auto& p : drive.local_fields)
    if (t_ps >= p.on_ps && t_ps < p.off_ps)
      add_local_pulse(m, drive, p, t_ps, out);

  bool stt_active = false;
  for (const auto& p : drive.stt)
    if (t_ps >= p.on_ps && t_ps < p.off_ps && p.u_m_s != 0.0)
      stt_active = true;
  if (stt_active) {
    GhostField g = fill_ghosts(m, params);
    for (const auto& p : drive.stt)
      if (t_ps >= p.on_ps && t_ps < p.off_ps && p.u_m_s != 0.0)
        add_stt_pulse(m, g, drive, p, out);
  }
}

VectorField local_field_hhat(const VectorField& m,
                             const DimensionlessParams& params,
                             const DriveSpec& drive, double t_ps) {
  VectorField out(m.grid());
  local_field_hhat(m, params, drive, t_ps, out);
  return out;
}

VectorField effective_field(const VectorField& m,
                            const DimensionlessParams& params,
                            const DriveSpec& drive, double t_ps) {
  GhostField g = fill_ghosts(m, params);
  VectorField h(m.grid());
  exchange_dmi_into(g, params.eps, params.kappa, h);
  VectorField hh(m.grid());
  local_field_hhat(m, params, drive, t_ps, hh);
  for (std::size_t d = 0; d < h.raw().size(); ++d) h.raw()[d] += hh.raw()[d];
  return h;
}

}  // namespace chiralmag
