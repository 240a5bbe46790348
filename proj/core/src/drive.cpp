#include "chiralmag/drive.hpp"

namespace chiralmag {

bool DriveSpec::active_at(double t_ps) const {
  for (const auto& p : local_fields)
    if (t_ps >= p.on_ps && t_ps < p.off_ps) return true;
  for (const auto& p : stt)
    if (t_ps >= p.on_ps && t_ps < p.off_ps) return true;
  return false;
}

DriveScales make_drive_scales(const PhysicalParams& p) {
  p.validate();
  DriveScales s;
  s.tesla_to_ms = 1.0 / (p.mu0 * p.Ms);
  s.transport_coeff = 1.0 / (p.mu0 * p.gamma * p.Ms * p.length_L);
  s.inv_length_L = 1.0 / p.length_L;
  return s;
}

}  // namespace chiralmag
