#pragma once

namespace chiralmag {

/// Material constants and scales in SI units.
struct PhysicalParams {
  double exchange_A = 0.0;   ///< exchange stiffness, J/m
  double dmi_D = 0.0;        ///< bulk DMI constant, J/m^2 (sign = chirality)
  double Ms = 0.0;           ///< saturation magnetization, A/m
  double Ku = 0.0;           ///< easy-axis anisotropy (axis e1), J/m^3
  double length_L = 0.0;     ///< spatial rescaling length, m
  double alpha = 0.0;        ///< Gilbert damping
  double gamma = 1.76085963e11;         ///< gyromagnetic ratio, 1/(s T)
  double mu0 = 1.2566370614359173e-6;   ///< vacuum permeability, T m/A

  void validate() const;  // throws std::invalid_argument
};

/// Coefficients of the rescaled equations.
///
///   eps     = 2A  / (mu0 Ms^2 L^2)   exchange
///   kappa   = 2D  / (mu0 Ms^2 L)     DMI
///   kappa_b = D L / (2A) = kappa/(2 eps)   boundary twist coefficient
///   q       = 2Ku / (mu0 Ms^2)       anisotropy
struct DimensionlessParams {
  double eps = 0.0;
  double kappa = 0.0;
  double kappa_b = 0.0;
  double q = 0.0;
  double alpha = 0.0;
};

DimensionlessParams nondimensionalize(const PhysicalParams& p);

/// Energy unit: physical energy = mu0 Ms^2 L^3 * (dimensionless energy).
double energy_scale_J(const PhysicalParams& p);

/// Physical duration of one dimensionless time unit, in picoseconds:
/// (1 + alpha^2) / (mu0 gamma Ms) * 1e12.
double time_scale_ps(const PhysicalParams& p);

double time_to_dimensionless(double t_ps, const PhysicalParams& p);
double time_to_ps(double tau, const PhysicalParams& p);

}  // namespace chiralmag
