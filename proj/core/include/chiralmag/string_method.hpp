#pragma once

#include <string>
#include <vector>

#include "chiralmag/field.hpp"
#include "chiralmag/krylov.hpp"
#include "chiralmag/material.hpp"

namespace chiralmag {

/// Discrete transition path: images[0..N] with both endpoints held fixed.
struct PathString {
  std::vector<MagnetizationField> images;
  int segments() const { return static_cast<int>(images.size()) - 1; }
};

/// Pointwise linear interpolation between the endpoints, normalized cell by
/// cell. Cells whose interpolant is shorter than 1e-8 (antipodal endpoints)
/// fall back to a deterministic direction orthogonal to the endpoint value.
/// n_segments = N gives N+1 images. Throws on grid mismatch or N < 1.
PathString init_string(const MagnetizationField& endpoint_a,
                       const MagnetizationField& endpoint_b, int n_segments);

/// L2 distance between two images: sqrt(cell volume) * ||a - b||_2 over all
/// cells and components.
double image_distance(const MagnetizationField& a, const MagnetizationField& b);

/// Normalized cumulative arc length, a[0] = 0, a[N] = 1, strictly increasing.
/// Throws std::invalid_argument when the string is degenerate (zero total or
/// zero segment length).
std::vector<double> arc_length_params(const PathString& s);

/// One outer-iteration evolution sweep: every interior image advances by
/// inner_steps harmonic-map heat-flow steps (first-order start, second-order
/// after) with no drives. Endpoints are not touched. Solver failures are
/// rethrown with the image index attached.
void evolve_images(PathString& s, const PhysicalParams& material, double dt_ps,
                   int inner_steps, const KrylovConfig& krylov);

/// Redistribute the images to uniform arc-length parameters with a natural
/// cubic spline per scalar degree of freedom, then normalize. Endpoints are
/// preserved bitwise.
void reparametrize(PathString& s);

/// max_i |curr[i] - prev[i]| <= tol over the per-image energies.
bool string_converged(const std::vector<double>& prev_energies,
                      const std::vector<double>& curr_energies, double tol);

struct StringSchedule {
  double tol = 1e-6;              ///< outer-iteration energy-change target
  long long max_iterations = 50000;
  double dt_ps = 1.0;             ///< heat-flow step per outer iteration
  int inner_steps = 1;
  KrylovConfig krylov;
};

struct MepImage {
  int index = 0;
  double a = 0.0;         ///< uniform arc-length parameter i/N
  double energy = 0.0;    ///< dimensionless
  double energy_J = 0.0;
  double q = 0.0;
  std::string label;      ///< endpoint | max | min | -
};

struct MepReport {
  bool converged = false;
  long long iterations = 0;
  std::vector<MepImage> images;
  std::vector<int> interior_maxima;  ///< saddle candidates
  std::vector<int> interior_minima;  ///< metastable states
  PathString path;                   ///< final images
};

/// Full string-method loop between two relaxed endpoints.
MepReport run_string(const MagnetizationField& endpoint_a,
                     const MagnetizationField& endpoint_b, int n_segments,
                     const StringSchedule& schedule,
                     const PhysicalParams& material);

}  // namespace chiralmag
