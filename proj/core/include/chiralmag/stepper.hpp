#pragma once

#include <functional>
#include <utility>

#include "chiralmag/boundary.hpp"
#include "chiralmag/drive.hpp"
#include "chiralmag/effective_field.hpp"
#include "chiralmag/field.hpp"
#include "chiralmag/krylov.hpp"
#include "chiralmag/material.hpp"

namespace chiralmag {

enum class Dynamics {
  landau_lifshitz,  ///< -m x h - alpha m x (m x h)
  heat_flow,        ///< -m x (m x h); harmonic map heat flow
};

/// Torque form applied to a field w at frozen direction field m_hat.
void torque_into(const MagnetizationField& m_hat, const VectorField& w,
                 Dynamics dynamics, double alpha, VectorField& out);

/// Left-hand-side operator of the semi-implicit solve,
///   A x = c0 x + T_mhat( eps lap x - kappa curl x ),
/// with c0 = 3/(2 dt) for BDF2 and 1/dt for BDF1 (dt dimensionless), and
/// T_mhat the torque form above. Ghosts of x are filled with the chiral
/// boundary map, which is linear, so A is linear.
void apply_operator(const VectorField& x, const MagnetizationField& m_hat,
                    const DimensionlessParams& params, double dt_tau,
                    Dynamics dynamics, int bdf_order, VectorField& out,
                    GhostField& scratch);

VectorField apply_operator(const VectorField& x,
                           const MagnetizationField& m_hat,
                           const DimensionlessParams& params, double dt_tau,
                           Dynamics dynamics, int bdf_order = 2);

struct TraceRecord {
  long long step = 0;
  double time_ps = 0.0;
  double energy = 0.0;    ///< dimensionless I
  double energy_J = 0.0;  ///< mu0 Ms^2 L^3 I
  Vec3 avg;               ///< spatial average of m
  double q = 0.0;         ///< topological charge, mid-depth layer
};

/// Semi-implicit BDF time integrator with normalization after every step.
/// The first step runs the first-order scheme to seed the two-level history;
/// all later steps are BDF2. Each solve is a matrix-free GMRES on the
/// operator above, diagonally scaled by its c0 coefficient.
class Integrator {
 public:
  Integrator(const PhysicalParams& material, const DriveSpec& drive,
             Dynamics dynamics, double dt_ps, MagnetizationField m0,
             KrylovConfig krylov = {});

  void step();

  const MagnetizationField& current() const { return m_curr_; }
  const VectorField& hhat_current() const { return hhat_curr_; }
  bool has_history() const { return has_history_; }

  /// (m_hat, h_tilde) = (2 m^n - m^{n-1}, 2 hhat^n - hhat^{n-1}).
  /// Requires two history levels.
  std::pair<MagnetizationField, VectorField> extrapolate() const;

  long long step_count() const { return step_; }
  double dt_ps() const { return dt_ps_; }
  double dt_tau() const { return dt_tau_; }
  /// Exact integer multiple, never a floating accumulation.
  double time_ps() const { return static_cast<double>(step_) * dt_ps_; }

  double energy() const;
  double energy_joules() const;
  TraceRecord trace_record() const;

  /// Largest post-projection | |m|-1 | seen during the run.
  double max_norm_drift() const { return norm_drift_; }
  const KrylovResult& last_solve() const { return last_solve_; }

  const PhysicalParams& material() const { return material_; }
  const DimensionlessParams& params() const { return params_; }
  const DriveSpec& drive() const { return drive_; }
  Dynamics dynamics() const { return dynamics_; }
  const KrylovConfig& krylov() const { return krylov_; }

  /// Complete restartable state (checkpoint payload).
  struct State {
    MagnetizationField m_curr, m_prev;
    VectorField hhat_curr, hhat_prev;
    long long step = 0;
    bool has_history = false;
  };
  State state() const;
  void restore(const State& s);

 private:
  void solve_step(int order);

  PhysicalParams material_;
  DimensionlessParams params_;
  DriveSpec drive_;
  Dynamics dynamics_;
  double dt_ps_ = 0.0;
  double dt_tau_ = 0.0;
  KrylovConfig krylov_;

  MagnetizationField m_curr_, m_prev_;
  VectorField hhat_curr_, hhat_prev_;
  long long step_ = 0;
  bool has_history_ = false;
  double norm_drift_ = 0.0;
  KrylovResult last_solve_;

  // solver workspace
  GhostField ghost_;
  MagnetizationField m_hat_;
  VectorField work_, torque_in_, rhs_field_;
  std::vector<double> rhs_, sol_;
};

struct SteadyOptions {
  double rel_tol = 1e-9;   ///< on |I_{n+1} - I_n| / |I_n|
  double abs_tol = 1e-18;  ///< fallback when I_n is zero
  long long max_steps = 100000;
};

struct SteadyResult {
  bool converged = false;
  long long steps = 0;     ///< steps taken in this call
  double final_energy = 0.0;
};

/// March until the per-step energy change satisfies the steady-state
/// criterion or the step budget runs out. on_step, when set, sees the trace
/// record after every step (step 0's record is emitted first on a fresh
/// integrator).
SteadyResult run_to_steady(
    Integrator& integ, const SteadyOptions& opts,
    const std::function<void(const TraceRecord&)>& on_step = nullptr);

/// Fixed step count, same reporting contract.
void run_steps(Integrator& integ, long long steps,
               const std::function<void(const TraceRecord&)>& on_step = nullptr);

}  // namespace chiralmag
