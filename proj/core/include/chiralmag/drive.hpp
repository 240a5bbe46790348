#pragma once

#include <vector>

#include "chiralmag/material.hpp"
#include "chiralmag/vec3.hpp"

namespace chiralmag {

/// Rectangular applied-field pulse. The box is axis-aligned, moves rigidly at
/// a physical velocity, and is active on the half-open window [on_ps, off_ps).
/// A cell belongs to the box when its center lies inside the closed box.
struct LocalFieldPulse {
  Vec3 amplitude_T;     ///< field vector in tesla
  Vec3 center;          ///< box center at t = on_ps, dimensionless coords
  Vec3 half_width;      ///< box half extents, dimensionless
  Vec3 velocity_m_s;    ///< rigid drift velocity, m/s
  double on_ps = 0.0;
  double off_ps = 0.0;
};

/// Spin-transfer-torque pulse parametrized by the transport velocity
/// u = -bJ (m/s) and the non-adiabaticity ratio xi, active on [on_ps, off_ps).
struct SttPulse {
  double u_m_s = 0.0;
  Vec3 direction{1.0, 0.0, 0.0};  ///< unit vector of current flow
  double xi = 0.0;
  double on_ps = 0.0;
  double off_ps = 0.0;
};

/// Unit conversions frozen from the material when the drive is built.
struct DriveScales {
  double tesla_to_ms = 0.0;     ///< h = B * tesla_to_ms = B / (mu0 Ms)
  double transport_coeff = 0.0; ///< 1 / (mu0 gamma Ms L); scales u in the STT term
  double inv_length_L = 0.0;    ///< 1 / L in 1/m, for box drift displacements
};

/// Full drive schedule. The uniform Zeeman field enters the energy; local
/// pulses and currents enter the explicit field term only.
struct DriveSpec {
  Vec3 uniform_h;  ///< dimensionless applied field, units of Ms
  std::vector<LocalFieldPulse> local_fields;
  std::vector<SttPulse> stt;
  DriveScales scales;

  bool time_dependent() const {
    return !local_fields.empty() || !stt.empty();
  }
  bool active_at(double t_ps) const;  ///< any pulse live at this instant
};

DriveScales make_drive_scales(const PhysicalParams& p);

/// Zero drive (no Zeeman, no pulses).
inline DriveSpec zero_drive() { return DriveSpec{}; }

}  // namespace chiralmag
