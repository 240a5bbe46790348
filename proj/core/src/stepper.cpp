#include "chiralmag/stepper.hpp"

#include <cmath>
#include <stdexcept>

#include "chiralmag/operators.hpp"

namespace chiralmag {

void torque_into(const MagnetizationField& m_hat, const VectorField& w,
                 Dynamics dynamics, double alpha, VectorField& out) {
  const int n = m_hat.cells();
  if (!out.grid().same_shape(m_hat.grid())) out = VectorField(m_hat.grid());
  for (int idx = 0; idx < n; ++idx) {
    const Vec3 m = m_hat.vec(idx);
    const Vec3 v = w.vec(idx);
    const Vec3 mxv = cross(m, v);
    if (dynamics == Dynamics::landau_lifshitz) {
      out.set_vec(idx, mxv + alpha * cross(m, mxv));
    } else {
      out.set_vec(idx, cross(m, mxv));
    }
  }
}

void apply_operator(const VectorField& x, const MagnetizationField& m_hat,
                    const DimensionlessParams& params, double dt_tau,
                    Dynamics dynamics, int bdf_order, VectorField& out,
                    GhostField& scratch) {
  if (!(dt_tau > 0.0))
    throw std::invalid_argument("apply_operator: dt must be > 0");
  if (bdf_order != 1 && bdf_order != 2)
    throw std::invalid_argument("apply_operator: order must be 1 or 2");
  const double c0 = bdf_order == 2 ? 1.5 / dt_tau : 1.0 / dt_tau;

  fill_ghosts_into(x, params, scratch);
  VectorField lx(x.grid());
  exchange_dmi_into(scratch, params.eps, params.kappa, lx);
  torque_into(m_hat, lx, dynamics, params.alpha, out);
  const int total = x.size();
  const double* xs = x.raw().data();
  double* os = out.raw().data();
  for (int d = 0; d < total; ++d) os[d] += c0 * xs[d];
}

VectorField apply_operator(const VectorField& x,
                           const MagnetizationField& m_hat,
                           const DimensionlessParams& params, double dt_tau,
                           Dynamics dynamics, int bdf_order) {
  VectorField out(x.grid());
  GhostField scratch(x.grid());
  apply_operator(x, m_hat, params, dt_tau, dynamics, bdf_order, out, scratch);
  return out;
}

Integrator::Integrator(const PhysicalParams& material, const DriveSpec& drive,
                       Dynamics dynamics, double dt_ps, MagnetizationField m0,
                       KrylovConfig krylov)
    : material_(material),
      params_(nondimensionalize(material)),
      drive_(drive),
      dynamics_(dynamics),
      dt_ps_(dt_ps),
      krylov_(krylov),
      m_curr_(std::move(m0)),
      ghost_(m_curr_.grid()),
      m_hat_(m_curr_.grid()),
      work_(m_curr_.grid()),
      torque_in_(m_curr_.grid()),
      rhs_field_(m_curr_.grid()) {
  if (!(dt_ps > 0.0))
    throw std::invalid_argument("integrator: dt must be > 0");
  dt_tau_ = time_to_dimensionless(dt_ps, material_);
  hhat_curr_ = local_field_hhat(m_curr_, params_, drive_, 0.0);
  hhat_prev_ = hhat_curr_;
  m_prev_ = m_curr_;
}

std::pair<MagnetizationField, VectorField> Integrator::extrapolate() const {
  if (!has_history_)
    throw std::logic_error("extrapolate: two history levels required");
  MagnetizationField mh(m_curr_.grid());
  VectorField ht(m_curr_.grid());
  const int total = m_curr_.size();
  for (int d = 0; d < total; ++d) {
    mh.raw()[d] = 2.0 * m_curr_.raw()[d] - m_prev_.raw()[d];
    ht.raw()[d] = 2.0 * hhat_curr_.raw()[d] - hhat_prev_.raw()[d];
  }
  return {std::move(mh), std::move(ht)};
}

void Integrator::solve_step(int order) {
  const int total = m_curr_.size();
  const double c0 = order == 2 ? 1.5 / dt_tau_ : 1.0 / dt_tau_;
  const double inv_c0 = 1.0 / c0;

  // Frozen direction field and explicit field term for this step.
  if (order == 2) {
    for (int d = 0; d < total; ++d) {
      m_hat_.raw()[d] = 2.0 * m_curr_.raw()[d] - m_prev_.raw()[d];
      torque_in_.raw()[d] = 2.0 * hhat_curr_.raw()[d] - hhat_prev_.raw()[d];
    }
  } else {
    m_hat_ = m_curr_;
    torque_in_ = hhat_curr_;
  }

  // rhs = (4 m^n - m^{n-1}) / (2 dt) - T(m_hat, h_tilde)   (BDF2)
  //     =  m^n / dt           - T(m^n,  hhat^n)            (BDF1)
  torque_into(m_hat_, torque_in_, dynamics_, params_.alpha, rhs_field_);
  rhs_.resize(total);
  if (order == 2) {
    const double a = 2.0 / dt_tau_, b = 0.5 / dt_tau_;
    for (int d = 0; d < total; ++d)
      rhs_[d] = (a * m_curr_.raw()[d] - b * m_prev_.raw()[d] -
                 rhs_field_.raw()[d]) *
                inv_c0;
  } else {
    for (int d = 0; d < total; ++d)
      rhs_[d] = (m_curr_.raw()[d] / dt_tau_ - rhs_field_.raw()[d]) * inv_c0;
  }

  // Diagonally scaled operator: (1/c0) A x.
  auto op = [&](const std::vector<double>& xin, std::vector<double>& xout) {
    work_.raw() = xin;
    fill_ghosts_into(work_, params_, ghost_);
    exchange_dmi_into(ghost_, params_.eps, params_.kappa, rhs_field_);
    torque_into(m_hat_, rhs_field_, dynamics_, params_.alpha, work_);
    xout.resize(xin.size());
    for (int d = 0; d < total; ++d)
      xout[d] = (c0 * xin[d] + work_.raw()[d]) * inv_c0;
  };

  sol_ = (order == 2 ? m_hat_ : m_curr_).raw();  // predictor as initial guess
  last_solve_ = gmres(op, rhs_, sol_, krylov_);

  m_prev_.raw().swap(m_curr_.raw());
  m_curr_.raw() = sol_;
  const double drift = project_in_place(m_curr_);
  if (drift > norm_drift_) norm_drift_ = drift;

  ++step_;
  hhat_prev_.raw().swap(hhat_curr_.raw());
  local_field_hhat(m_curr_, params_, drive_, time_ps(), hhat_curr_);
  has_history_ = true;
}

void Integrator::step() { solve_step(has_history_ ? 2 : 1); }

double Integrator::energy() const {
  return chiralmag::energy(m_curr_, params_, drive_);
}

double Integrator::energy_joules() const {
  return energy() * energy_scale_J(material_);
}

TraceRecord Integrator::trace_record() const {
  TraceRecord r;
  r.step = step_;
  r.time_ps = time_ps();
  r.energy = energy();
  r.energy_J = r.energy * energy_scale_J(material_);
  r.avg = spatial_average(m_curr_);
  r.q = skyrmion_number(m_curr_);
  return r;
}

Integrator::State Integrator::state() const {
  return {m_curr_, m_prev_, hhat_curr_, hhat_prev_, step_, has_history_};
}

void Integrator::restore(const State& s) {
  if (!s.m_curr.grid().same_shape(m_curr_.grid()))
    throw std::invalid_argument("integrator restore: grid mismatch");
  m_curr_ = s.m_curr;
  m_prev_ = s.m_prev;
  hhat_curr_ = s.hhat_curr;
  hhat_prev_ = s.hhat_prev;
  step_ = s.step;
  has_history_ = s.has_history;
}

SteadyResult run_to_steady(
    Integrator& integ, const SteadyOptions& opts,
    const std::function<void(const TraceRecord&)>& on_step) {
  SteadyResult res;
  double prev_energy = integ.energy();
  if (on_step && integ.step_count() == 0) on_step(integ.trace_record());
  for (long long s = 0; s < opts.max_steps; ++s) {
    integ.step();
    ++res.steps;
    const TraceRecord rec = integ.trace_record();
    if (on_step) on_step(rec);
    const double change = std::abs(rec.energy - prev_energy);
    const double gate =
        std::max(opts.rel_tol * std::abs(prev_energy), opts.abs_tol);
    prev_energy = rec.energy;
    if (change <= gate) {
      res.converged = true;
      res.final_energy = rec.energy;
      return res;
    }
  }
  res.final_energy = prev_energy;
  return res;
}

void run_steps(Integrator& integ, long long steps,
               const std::function<void(const TraceRecord&)>& on_step) {
  if (on_step && integ.step_count() == 0) on_step(integ.trace_record());
  for (long long s = 0; s < steps; ++s) {
    integ.step();
    if (on_step) on_step(integ.trace_record());
  }
}

}  // namespace chiralmag
