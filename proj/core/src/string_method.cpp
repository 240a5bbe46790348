#include "chiralmag/string_method.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chiralmag/drive.hpp"
#include "chiralmag/errors.hpp"
#include "chiralmag/operators.hpp"
#include "chiralmag/stepper.hpp"

namespace chiralmag {

PathString init_string(const MagnetizationField& endpoint_a,
                       const MagnetizationField& endpoint_b, int n_segments) {
  if (n_segments < 1)
    throw std::invalid_argument("init_string: need at least one segment");
  if (!endpoint_a.grid().same_shape(endpoint_b.grid()))
    throw std::invalid_argument("init_string: endpoint grids differ");

  PathString s;
  s.images.reserve(n_segments + 1);
  s.images.push_back(endpoint_a);
  const int n = endpoint_a.cells();
  for (int q = 1; q < n_segments; ++q) {
    const double w = static_cast<double>(q) / n_segments;
    MagnetizationField img(endpoint_a.grid());
    for (int idx = 0; idx < n; ++idx) {
      const Vec3 a = endpoint_a.vec(idx);
      const Vec3 b = endpoint_b.vec(idx);
      Vec3 v = (1.0 - w) * a + w * b;
      if (norm(v) < 1e-8) {
        // Antipodal pair: pick a direction orthogonal to a, deterministically.
        v = cross(a, Vec3{0.0, 0.0, 1.0});
        if (dot(v, v) < 1e-12) v = cross(a, Vec3{1.0, 0.0, 0.0});
      }
      img.set_vec(idx, v);
    }
    project_in_place(img);
    s.images.push_back(std::move(img));
  }
  s.images.push_back(endpoint_b);
  return s;
}

double image_distance(const MagnetizationField& a,
                      const MagnetizationField& b) {
  double s = 0.0;
  const std::size_t total = a.raw().size();
  for (std::size_t d = 0; d < total; ++d) {
    const double diff = a.raw()[d] - b.raw()[d];
    s += diff * diff;
  }
  return std::sqrt(s * a.grid().cell_volume());
}

std::vector<double> arc_length_params(const PathString& s) {
  const int n = static_cast<int>(s.images.size());
  if (n < 2)
    throw std::invalid_argument("arc_length_params: need at least two images");
  std::vector<double> a(n, 0.0);
  for (int i = 1; i < n; ++i)
    a[i] = a[i - 1] + image_distance(s.images[i], s.images[i - 1]);
  const double total = a[n - 1];
  if (!(total > 0.0))
    throw std::invalid_argument("arc_length_params: degenerate string");
  for (int i = 1; i < n; ++i) {
    a[i] /= total;
    if (!(a[i] > a[i - 1]))
      throw std::invalid_argument(
          "arc_length_params: coincident adjacent images");
  }
  a[n - 1] = 1.0;
  return a;
}

void evolve_images(PathString& s, const PhysicalParams& material, double dt_ps,
                   int inner_steps, const KrylovConfig& krylov) {
  if (inner_steps < 1)
    throw std::invalid_argument("evolve_images: inner_steps must be >= 1");
  const int n = static_cast<int>(s.images.size());
  for (int i = 1; i + 1 < n; ++i) {
    try {
      Integrator integ(material, zero_drive(), Dynamics::heat_flow, dt_ps,
                       s.images[i], krylov);
      for (int q = 0; q < inner_steps; ++q) integ.step();
      s.images[i] = integ.current();
    } catch (const SolverError& e) {
      throw SolverError("image " + std::to_string(i) + ": " + e.what(),
                        e.residual, e.iterations);
    }
  }
}

namespace {

/// Natural cubic spline over shared knots; the tridiagonal factorization is
/// computed once and reused for every degree of freedom.
class SplineTable {
 public:
  explicit SplineTable(const std::vector<double>& knots) : t_(knots) {
    const int n = static_cast<int>(t_.size());
    const int m = n - 2;  // interior unknowns
    diag_.assign(std::max(m, 0), 0.0);
    upper_.assign(std::max(m, 0), 0.0);
    lower_.assign(std::max(m, 0), 0.0);
    for (int i = 1; i <= m; ++i) {
      lower_[i - 1] = (t_[i] - t_[i - 1]) / 6.0;
      diag_[i - 1] = (t_[i + 1] - t_[i - 1]) / 3.0;
      upper_[i - 1] = (t_[i + 1] - t_[i]) / 6.0;
    }
    // Thomas forward sweep on the coefficient pattern.
    cprime_.assign(std::max(m, 0), 0.0);
    pivot_.assign(std::max(m, 0), 0.0);
    for (int i = 0; i < m; ++i) {
      const double denom = diag_[i] - (i > 0 ? lower_[i] * cprime_[i - 1] : 0.0);
      pivot_[i] = denom;
      cprime_[i] = upper_[i] / denom;
    }
    m2_.assign(n, 0.0);
    dwork_.assign(std::max(m, 0), 0.0);
  }

  /// Solve for second derivatives given knot values y (natural ends), then
  /// evaluate at the query points; y and out may not alias.
  void interpolate(const std::vector<double>& y,
                   const std::vector<double>& queries,
                   const std::vector<int>& intervals, std::vector<double>& out) {
    const int n = static_cast<int>(t_.size());
    const int m = n - 2;
    for (int i = 0; i < m; ++i) {
      const double rhs = (y[i + 2] - y[i + 1]) / (t_[i + 2] - t_[i + 1]) -
                         (y[i + 1] - y[i]) / (t_[i + 1] - t_[i]);
      dwork_[i] = (rhs - (i > 0 ? lower_[i] * dwork_[i - 1] : 0.0)) / pivot_[i];
    }
    m2_[0] = m2_[n - 1] = 0.0;
    for (int i = m - 1; i >= 0; --i)
      m2_[i + 1] = dwork_[i] - (i < m - 1 ? cprime_[i] * m2_[i + 2] : 0.0);

    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      const int i = intervals[qi];
      const double h = t_[i + 1] - t_[i];
      const double du = t_[i + 1] - queries[qi];
      const double dl = queries[qi] - t_[i];
      out[qi] = (y[i] * du + y[i + 1] * dl) / h +
                m2_[i] * (du * du * du / h - h * du) / 6.0 +
                m2_[i + 1] * (dl * dl * dl / h - h * dl) / 6.0;
    }
  }

  /// Knot interval index for each query (clamped into [0, n-2]).
  std::vector<int> locate(const std::vector<double>& queries) const {
    std::vector<int> iv(queries.size(), 0);
    const int n = static_cast<int>(t_.size());
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      auto it = std::upper_bound(t_.begin(), t_.end(), queries[qi]);
      int i = static_cast<int>(it - t_.begin()) - 1;
      iv[qi] = std::clamp(i, 0, n - 2);
    }
    return iv;
  }

 private:
  std::vector<double> t_;
  std::vector<double> diag_, upper_, lower_, cprime_, pivot_;
  std::vector<double> m2_, dwork_;
};

}  // namespace

void reparametrize(PathString& s) {
  const int n = static_cast<int>(s.images.size());
  if (n < 3) return;  // two images: endpoints only, nothing to move
  const std::vector<double> knots = arc_length_params(s);

  const int nseg = n - 1;
  std::vector<double> queries(n - 2);
  for (int q = 1; q < nseg; ++q)
    queries[q - 1] = static_cast<double>(q) / nseg;

  SplineTable table(knots);
  const std::vector<int> intervals = table.locate(queries);

  const std::size_t dofs = s.images[0].raw().size();
  std::vector<double> y(n), vals(n - 2);
  std::vector<VectorField> fresh(n - 2);
  for (int q = 0; q < n - 2; ++q) fresh[q] = VectorField(s.images[0].grid());

  for (std::size_t d = 0; d < dofs; ++d) {
    for (int i = 0; i < n; ++i) y[i] = s.images[i].raw()[d];
    table.interpolate(y, queries, intervals, vals);
    for (int q = 0; q < n - 2; ++q) fresh[q].raw()[d] = vals[q];
  }

  for (int q = 0; q < n - 2; ++q) {
    project_in_place(fresh[q]);
    s.images[q + 1].raw().swap(fresh[q].raw());
  }
}

bool string_converged(const std::vector<double>& prev_energies,
                      const std::vector<double>& curr_energies, double tol) {
  if (prev_energies.size() != curr_energies.size())
    throw std::invalid_argument("string_converged: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < prev_energies.size(); ++i)
    worst = std::max(worst, std::abs(curr_energies[i] - prev_energies[i]));
  return worst <= tol;
}

namespace {

std::vector<double> image_energies(const PathString& s,
                                   const DimensionlessParams& params) {
  std::vector<double> e(s.images.size());
  for (std::size_t i = 0; i < s.images.size(); ++i)
    e[i] = energy(s.images[i], params);
  return e;
}

bool string_degenerate(const PathString& s) {
  for (std::size_t i = 1; i < s.images.size(); ++i)
    if (image_distance(s.images[i], s.images[i - 1]) > 0.0) return false;
  return true;
}

}  // namespace

MepReport run_string(const MagnetizationField& endpoint_a,
                     const MagnetizationField& endpoint_b, int n_segments,
                     const StringSchedule& schedule,
                     const PhysicalParams& material) {
  const DimensionlessParams params = nondimensionalize(material);
  MepReport report;
  report.path = init_string(endpoint_a, endpoint_b, n_segments);
  PathString& s = report.path;

  std::vector<double> energies = image_energies(s, params);
  for (long long iter = 1; iter <= schedule.max_iterations; ++iter) {
    evolve_images(s, material, schedule.dt_ps, schedule.inner_steps,
                  schedule.krylov);
    if (!string_degenerate(s)) reparametrize(s);
    std::vector<double> next = image_energies(s, params);
    const bool done = string_converged(energies, next, schedule.tol);
    energies = std::move(next);
    report.iterations = iter;
    if (done) {
      report.converged = true;
      break;
    }
  }

  const double escale = energy_scale_J(material);
  const int n = static_cast<int>(s.images.size());
  report.images.resize(n);
  for (int i = 0; i < n; ++i) {
    MepImage& im = report.images[i];
    im.index = i;
    im.a = static_cast<double>(i) / n_segments;
    im.energy = energies[i];
    im.energy_J = energies[i] * escale;
    im.q = skyrmion_number(s.images[i]);
    im.label = (i == 0 || i == n - 1) ? "endpoint" : "-";
  }
  for (int i = 1; i + 1 < n; ++i) {
    if (energies[i] > energies[i - 1] && energies[i] > energies[i + 1]) {
      report.interior_maxima.push_back(i);
      report.images[i].label = "max";
    } else if (energies[i] < energies[i - 1] && energies[i] < energies[i + 1]) {
      report.interior_minima.push_back(i);
      report.images[i].label = "min";
    }
  }
  return report;
}

}  // namespace chiralmag
