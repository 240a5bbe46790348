#pragma once

#include "chiralmag/boundary.hpp"
#include "chiralmag/drive.hpp"
#include "chiralmag/field.hpp"
#include "chiralmag/material.hpp"
#include "chiralmag/operators.hpp"

namespace chiralmag {

/// Explicitly treated field terms at physical time t_ps:
///
///   hhat = -q (m2 e2 + m3 e3) + h_e + local pulses
///          - u * c_t * [ m x (jhat . grad) m  +  xi (jhat . grad) m ]
///
/// with c_t = 1 / (mu0 gamma Ms L). Local pulse amplitudes convert from tesla
/// as h = B / (mu0 Ms); box membership uses cell centers against the closed
/// box translated by v * (t - t_on). The STT gradient uses the ghost
/// stencils, so the chiral boundary condition is felt by the current term.
void local_field_hhat(const VectorField& m, const DimensionlessParams& params,
                      const DriveSpec& drive, double t_ps, VectorField& out);

VectorField local_field_hhat(const VectorField& m,
                             const DimensionlessParams& params,
                             const DriveSpec& drive, double t_ps);

/// Full effective field h = eps lap m - kappa curl m + hhat.
VectorField effective_field(const VectorField& m,
                            const DimensionlessParams& params,
                            const DriveSpec& drive, double t_ps);

}  // namespace chiralmag
