#include "chiralmag/material.hpp"

#include <stdexcept>

namespace chiralmag {

void PhysicalParams::validate() const {
  if (!(exchange_A > 0.0))
    throw std::invalid_argument("material: exchange A must be > 0");
  if (!(Ms > 0.0)) throw std::invalid_argument("material: Ms must be > 0");
  if (Ku < 0.0) throw std::invalid_argument("material: Ku must be >= 0");
  if (!(length_L > 0.0))
    throw std::invalid_argument("material: length scale L must be > 0");
  if (!(alpha >= 0.0) || alpha > 1.0)
    throw std::invalid_argument("material: alpha must lie in [0, 1]");
  if (!(gamma > 0.0))
    throw std::invalid_argument("material: gamma must be > 0");
  if (!(mu0 > 0.0)) throw std::invalid_argument("material: mu0 must be > 0");
}

DimensionlessParams nondimensionalize(const PhysicalParams& p) {
  p.validate();
  const double w = p.mu0 * p.Ms * p.Ms;  // energy density unit, J/m^3
  DimensionlessParams d;
  d.eps = 2.0 * p.exchange_A / (w * p.length_L * p.length_L);
  d.kappa = 2.0 * p.dmi_D / (w * p.length_L);
  d.kappa_b = p.dmi_D * p.length_L / (2.0 * p.exchange_A);
  d.q = 2.0 * p.Ku / w;
  d.alpha = p.alpha;
  return d;
}

double energy_scale_J(const PhysicalParams& p) {
  return p.mu0 * p.Ms * p.Ms * p.length_L * p.length_L * p.length_L;
}

double time_scale_ps(const PhysicalParams& p) {
  return (1.0 + p.alpha * p.alpha) / (p.mu0 * p.gamma * p.Ms) * 1e12;
}

double time_to_dimensionless(double t_ps, const PhysicalParams& p) {
  return t_ps / time_scale_ps(p);
}

double time_to_ps(double tau, const PhysicalParams& p) {
  return tau * time_scale_ps(p);
}

}  // namespace chiralmag
