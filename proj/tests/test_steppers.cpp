#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "chiralmag/errors.hpp"
#include "chiralmag/krylov.hpp"
#include "chiralmag/material.hpp"
#include "chiralmag/operators.hpp"
#include "chiralmag/stepper.hpp"
#include "support/fixtures.hpp"

using namespace chiralmag;
using namespace testsupport;

namespace {

DriveSpec plain_drive(const PhysicalParams& mat) {
  DriveSpec d = zero_drive();
  d.scales = make_drive_scales(mat);
  return d;
}

}  // namespace

TEST_CASE("torque forms follow their definitions") {
  GridSpec g = film_grid(4, 3, 2);
  MagnetizationField m = random_unit_field(g, 63);
  VectorField w = random_unit_field(g, 64);

  VectorField ll(g), hf(g);
  torque_into(m, w, Dynamics::landau_lifshitz, 0.6, ll);
  torque_into(m, w, Dynamics::heat_flow, 0.6, hf);
  for (int i = 0; i < m.cells(); ++i) {
    const Vec3 mm = m.vec(i), ww = w.vec(i);
    const Vec3 prec = -cross(mm, ww);
    const Vec3 damp = -cross(mm, cross(mm, ww));
    CHECK(norm(ll.vec(i) - (prec + 0.6 * damp)) < 1e-14);
    CHECK(norm(hf.vec(i) - damp) < 1e-14);
  }

  // Zero damping keeps only the precession part.
  VectorField ll0(g);
  torque_into(m, w, Dynamics::landau_lifshitz, 0.0, ll0);
  for (int i = 0; i < m.cells(); ++i)
    CHECK(norm(ll0.vec(i) + cross(m.vec(i), w.vec(i))) < 1e-14);
}

TEST_CASE("implicit-step operator combines mass and stiffness terms") {
  GridSpec g = film_grid(4, 4, 1);
  const PhysicalParams mat = fege80(0.6);
  const DimensionlessParams p = nondimensionalize(mat);
  MagnetizationField m = random_unit_field(g, 67);
  VectorField x = random_unit_field(g, 68);
  const double dt = 0.05;

  VectorField a2 = apply_operator(x, m, p, dt, Dynamics::landau_lifshitz, 2);
  GhostField gf = fill_ghosts(x, p);
  VectorField stiff(g);
  exchange_dmi_into(gf, p.eps, p.kappa, stiff);
  VectorField t(g);
  torque_into(m, stiff, Dynamics::landau_lifshitz, p.alpha, t);
  for (int i = 0; i < x.size(); ++i)
    CHECK(a2.raw()[i] ==
          doctest::Approx(1.5 / dt * x.raw()[i] + t.raw()[i]).epsilon(1e-13));

  // The two schemes differ only in the mass coefficient.
  VectorField a1 = apply_operator(x, m, p, dt, Dynamics::landau_lifshitz, 1);
  for (int i = 0; i < x.size(); ++i)
    CHECK(a1.raw()[i] - a2.raw()[i] ==
          doctest::Approx(-0.5 / dt * x.raw()[i]).epsilon(1e-13));
}

TEST_CASE("implicit-step operator is linear and matches its dense probe") {
  GridSpec g = film_grid(4, 4, 1);
  const PhysicalParams mat = fege80(0.6);
  const DimensionlessParams p = nondimensionalize(mat);
  MagnetizationField m = random_unit_field(g, 71);
  const double dt = 0.1;

  for (Dynamics dyn : {Dynamics::landau_lifshitz, Dynamics::heat_flow}) {
    const auto a = dense_operator(m, p, dt, dyn, 2);
    VectorField x = random_unit_field(g, 73);
    std::vector<double> xv(x.raw(), x.raw() + x.size());
    const auto ax = dense_apply(a, xv);
    VectorField direct = apply_operator(x, m, p, dt, dyn, 2);
    double worst = 0.0;
    for (int i = 0; i < x.size(); ++i)
      worst = std::max(worst, std::abs(ax[i] - direct.raw()[i]));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("steps preserve unit norms and exact clock times") {
  GridSpec g = film_grid(8, 8, 2);
  const PhysicalParams mat = fege80(0.6);
  Integrator integ(mat, plain_drive(mat), Dynamics::landau_lifshitz, 0.1,
                   bloch_skyrmion(g, 0.3));
  CHECK_FALSE(integ.has_history());
  CHECK(integ.time_ps() == 0.0);
  for (int s = 1; s <= 25; ++s) {
    integ.step();
    CHECK(integ.max_norm_drift() < 1e-12);
    CHECK(max_norm_deviation(integ.current()) < 1e-14);
    CHECK(integ.time_ps() == static_cast<double>(s) * 0.1);
  }
  CHECK(integ.has_history());
  CHECK(integ.step_count() == 25);
  CHECK(integ.last_solve().iterations >= 1);

  const TraceRecord r = integ.trace_record();
  CHECK(r.step == 25);
  CHECK(r.time_ps == 2.5);
  CHECK(r.energy_J == doctest::Approx(r.energy * 9.487292135992045e-17)
                          .epsilon(1e-13));
}

TEST_CASE("both dynamics dissipate energy under static conditions") {
  GridSpec g = film_grid(10, 10, 2);
  for (Dynamics dyn : {Dynamics::heat_flow, Dynamics::landau_lifshitz}) {
    const PhysicalParams mat = fege80(dyn == Dynamics::heat_flow ? 0.0 : 0.6);
    Integrator integ(mat, plain_drive(mat), dyn, 1.0, bloch_skyrmion(g, 0.3));
    double prev = integ.energy();
    for (int s = 0; s < 60; ++s) {
      integ.step();
      const double cur = integ.energy();
      CHECK(cur <= prev + 1e-10 * std::abs(prev));
      prev = cur;
    }
  }
}

TEST_CASE("restoring right after the seeding step stays bitwise") {
  // The first step seeds the two-level history; restoring at that boundary
  // must put a fresh integrator on the identical trajectory.
  GridSpec g = film_grid(6, 6, 1);
  const PhysicalParams mat = fege80(0.6);
  Integrator a(mat, plain_drive(mat), Dynamics::landau_lifshitz, 0.5,
               bloch_skyrmion(g, 0.3));
  a.step();
  CHECK(a.has_history());

  Integrator b(mat, plain_drive(mat), Dynamics::landau_lifshitz, 0.5,
               bloch_skyrmion(g, 0.3));
  b.restore(a.state());
  for (int s = 0; s < 4; ++s) {
    a.step();
    b.step();
  }
  for (int i = 0; i < a.current().size(); ++i)
    CHECK(a.current().raw()[i] == b.current().raw()[i]);
}

TEST_CASE("state save and restore resumes bitwise") {
  GridSpec g = film_grid(8, 6, 2);
  const PhysicalParams mat = fege80(0.6);
  DriveSpec d = plain_drive(mat);
  d.uniform_h = Vec3{0.0, 0.0, 0.1};

  Integrator straight(mat, d, Dynamics::landau_lifshitz, 0.25,
                      bloch_skyrmionium(g, 0.22, 0.42));
  for (int s = 0; s < 5; ++s) straight.step();
  const Integrator::State st = straight.state();
  CHECK(st.step == 5);

  for (int s = 0; s < 5; ++s) straight.step();

  Integrator resumed(mat, d, Dynamics::landau_lifshitz, 0.25,
                     bloch_skyrmionium(g, 0.22, 0.42));
  resumed.restore(st);
  CHECK(resumed.step_count() == 5);
  for (int s = 0; s < 5; ++s) resumed.step();

  CHECK(resumed.time_ps() == straight.time_ps());
  for (int i = 0; i < straight.current().size(); ++i)
    CHECK(resumed.current().raw()[i] == straight.current().raw()[i]);
}

TEST_CASE("steady detection stops when the energy settles") {
  GridSpec g = film_grid(6, 6, 1);
  PhysicalParams mat = fege80(0.0);
  mat.dmi_D = 0.0;   // mirror closure
  mat.Ku = 2.0e4;    // easy axis pulls the state to e1
  Integrator integ(mat, plain_drive(mat), Dynamics::heat_flow, 2.0,
                   new_uniform(g, Vec3{1.0, 0.6, 0.0}));
  SteadyOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-20;
  opts.max_steps = 5000;

  long long seen = 0;
  SteadyResult res = run_to_steady(integ, opts, [&](const TraceRecord& rec) {
    if (seen == 0) CHECK(rec.step == 0);
    ++seen;
  });
  CHECK(res.converged);
  CHECK(res.steps < 5000);
  CHECK(seen == res.steps + 1);
  // Pure easy-axis energy floor is zero, reached at m = e1.
  CHECK(std::abs(res.final_energy) < 1e-10);
  CHECK(std::abs(integ.current().vec(0).x) == doctest::Approx(1.0).epsilon(1e-6));

  // A capped run reports no convergence.
  Integrator integ2(mat, plain_drive(mat), Dynamics::heat_flow, 2.0,
                    new_uniform(g, Vec3{1.0, 0.6, 0.0}));
  SteadyOptions tight = opts;
  tight.max_steps = 3;
  CHECK_FALSE(run_to_steady(integ2, tight).converged);
}

TEST_CASE("run_steps emits the leading record only on a fresh run") {
  GridSpec g = film_grid(4, 4, 1);
  const PhysicalParams mat = fege80(0.6);
  Integrator integ(mat, plain_drive(mat), Dynamics::landau_lifshitz, 1.0,
                   bloch_skyrmion(g, 0.3));
  std::vector<long long> steps;
  run_steps(integ, 4, [&](const TraceRecord& r) { steps.push_back(r.step); });
  CHECK(steps == std::vector<long long>{0, 1, 2, 3, 4});

  steps.clear();
  run_steps(integ, 2, [&](const TraceRecord& r) { steps.push_back(r.step); });
  CHECK(steps == std::vector<long long>{5, 6});
}

TEST_CASE("single moment precession matches a high-accuracy reference") {
  // One cell, no exchange or twist contribution, constant field along e3:
  // the update reduces to the damped precession equation. Compare against
  // a fine fixed-step classic integrator of the same dimensionless flow.
  GridSpec g = film_grid(1, 1, 1);
  PhysicalParams mat = fege80(0.05);
  mat.dmi_D = 0.0;
  DriveSpec d = plain_drive(mat);
  const double h0 = 0.5;
  d.uniform_h = Vec3{0.0, 0.0, h0};

  const Vec3 m0{0.8, 0.0, 0.6};
  MagnetizationField f0(g);
  f0.set_vec(0, m0);

  const double tau_period = 2.0 * M_PI / h0;
  const int steps = 2000;
  const double tscale = time_scale_ps(mat);
  const double dt_ps = tau_period / steps * tscale;

  Integrator integ(mat, d, Dynamics::landau_lifshitz, dt_ps, f0);
  for (int s = 0; s < steps; ++s) integ.step();

  const double alpha = mat.alpha;
  const Vec3 h{0.0, 0.0, h0};
  const Vec3 ref = rk4_integrate(m0, tau_period, 200000,
                                 [&](const Vec3& m, double) {
                                   const Vec3 p = -cross(m, h);
                                   const Vec3 q = -cross(m, cross(m, h));
                                   return p + alpha * q;
                                 });
  CHECK(norm(integ.current().vec(0) - ref) < 1e-4);
}

TEST_CASE("step convergence is second order once history exists") {
  GridSpec g = film_grid(6, 6, 1);
  const PhysicalParams mat = fege80(0.6);
  const MagnetizationField m0 = bloch_skyrmion(g, 0.3);
  const double horizon_ps = 8.0;

  auto at_dt = [&](double dt_ps) {
    Integrator integ(mat, plain_drive(mat), Dynamics::landau_lifshitz, dt_ps,
                     m0);
    const long long n = static_cast<long long>(horizon_ps / dt_ps + 0.5);
    for (long long s = 0; s < n; ++s) integ.step();
    return integ.current();
  };

  const MagnetizationField c = at_dt(1.0);
  const MagnetizationField f = at_dt(0.5);
  const MagnetizationField ff = at_dt(0.25);
  const double e1 = max_abs_diff(c, f);
  const double e2 = max_abs_diff(f, ff);
  const double rate = std::log2(e1 / e2);
  CHECK(rate > 1.5);
  CHECK(rate < 2.5);
}

TEST_CASE("an exhausted solver budget raises the solver error") {
  GridSpec g = film_grid(8, 8, 2);
  const PhysicalParams mat = fege80(0.6);
  KrylovConfig cramped;
  cramped.tol = 1e-14;
  cramped.max_iters = 1;
  cramped.restart = 1;
  Integrator integ(mat, plain_drive(mat), Dynamics::landau_lifshitz, 5.0,
                   bloch_skyrmion(g, 0.3), cramped);
  CHECK_THROWS_AS(integ.step(), SolverError);
}
