#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "chiralmag/material.hpp"
#include "chiralmag/operators.hpp"
#include "chiralmag/string_method.hpp"
#include "support/fixtures.hpp"

using namespace chiralmag;
using namespace testsupport;

TEST_CASE("string initialization interpolates pointwise on the sphere") {
  GridSpec g = film_grid(6, 6, 1);
  MagnetizationField a = new_uniform(g, Vec3{0, 0, 1});
  MagnetizationField b = bloch_skyrmion(g, 0.3);
  PathString s = init_string(a, b, 5);
  REQUIRE(s.segments() == 5);
  REQUIRE(static_cast<int>(s.images.size()) == 6);

  for (int i = 0; i < a.size(); ++i) {
    CHECK(s.images.front().raw()[i] == a.raw()[i]);
    CHECK(s.images.back().raw()[i] == b.raw()[i]);
  }
  for (const auto& img : s.images)
    CHECK(max_norm_deviation(img) < 1e-14);

  // Same inputs, same string.
  PathString s2 = init_string(a, b, 5);
  for (std::size_t n = 0; n < s.images.size(); ++n)
    for (int i = 0; i < a.size(); ++i)
      CHECK(s.images[n].raw()[i] == s2.images[n].raw()[i]);

  CHECK_THROWS(init_string(a, b, 0));
  MagnetizationField small(film_grid(3, 3, 1));
  small.fill(1.0);
  CHECK_THROWS(init_string(a, project(small), 4));
}

TEST_CASE("antipodal endpoints get a deterministic orthogonal detour") {
  GridSpec g = film_grid(2, 2, 1);
  MagnetizationField up = new_uniform(g, Vec3{0, 0, 1});
  MagnetizationField down = new_uniform(g, Vec3{0, 0, -1});
  PathString s = init_string(up, down, 4);
  const MagnetizationField& mid = s.images[2];
  for (int i = 0; i < mid.cells(); ++i) {
    CHECK(norm(mid.vec(i)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(mid.vec(i).z) < 1e-6);  // orthogonal to both poles
  }
}

TEST_CASE("image distance is a volume-weighted L2 norm") {
  GridSpec g = film_grid(4, 3, 2);
  MagnetizationField a = new_uniform(g, Vec3{0, 0, 1});
  MagnetizationField b = new_uniform(g, Vec3{1, 0, 0});
  CHECK(image_distance(a, a) == 0.0);
  CHECK(image_distance(a, b) == image_distance(b, a));
  // Every cell differs by sqrt(2): distance = sqrt(vol * 2 n).
  const double expect = std::sqrt(g.cell_volume() * 2.0 * a.cells());
  CHECK(image_distance(a, b) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("arc parameters are normalized and strictly increasing") {
  GridSpec g = film_grid(5, 5, 1);
  PathString s = init_string(new_uniform(g, Vec3{0, 0, 1}),
                             bloch_skyrmion(g, 0.35), 6);
  const std::vector<double> a = arc_length_params(s);
  REQUIRE(a.size() == s.images.size());
  CHECK(a.front() == 0.0);
  CHECK(a.back() == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] > a[i - 1]);

  PathString degenerate;
  degenerate.images.assign(3, new_uniform(g, Vec3{0, 0, 1}));
  CHECK_THROWS_AS(arc_length_params(degenerate), std::invalid_argument);
}

TEST_CASE("reparametrization equalizes segments and pins the endpoints") {
  GridSpec g = film_grid(5, 4, 1);
  MagnetizationField a = new_uniform(g, Vec3{0, 0, 1});
  MagnetizationField b = bloch_skyrmion(g, 0.35);
  PathString s = init_string(a, b, 8);

  // Skew the interior so segments are strongly uneven.
  for (int n = 1; n < 8; ++n) {
    PathString tmp = init_string(a, b, 20);
    s.images[n] = tmp.images[n];  // bunch all images near endpoint a
  }
  auto max_segment_skew = [](const std::vector<double>& params) {
    double worst = 0.0;
    const double even = 1.0 / (params.size() - 1);
    for (std::size_t i = 1; i < params.size(); ++i)
      worst = std::max(worst, std::abs(params[i] - params[i - 1] - even));
    return worst;
  };
  const double skew_before = max_segment_skew(arc_length_params(s));
  CHECK(skew_before > 0.05);

  reparametrize(s);

  for (int i = 0; i < a.size(); ++i) {
    CHECK(s.images.front().raw()[i] == a.raw()[i]);
    CHECK(s.images.back().raw()[i] == b.raw()[i]);
  }
  for (const auto& img : s.images) CHECK(max_norm_deviation(img) < 1e-12);
  const double skew_after = max_segment_skew(arc_length_params(s));
  CHECK(skew_after < 0.02);
  CHECK(skew_after < 0.2 * skew_before);
}

TEST_CASE("convergence check compares per-image energies") {
  CHECK(string_converged({1.0, 2.0, 3.0}, {1.0, 2.0 + 5e-7, 3.0}, 1e-6));
  CHECK_FALSE(string_converged({1.0, 2.0, 3.0}, {1.0, 2.0 + 2e-6, 3.0}, 1e-6));
}

TEST_CASE("evolution sweeps lower interior energies and hold the ends") {
  GridSpec g = film_grid(8, 8, 1);
  const PhysicalParams mat = fege80(0.0);
  const DimensionlessParams p = nondimensionalize(mat);
  MagnetizationField a = new_uniform(g, Vec3{0, 0, 1});
  MagnetizationField b = bloch_skyrmion(g, 0.35);
  PathString s = init_string(a, b, 6);

  std::vector<double> e0;
  for (const auto& img : s.images) e0.push_back(energy(img, p));

  KrylovConfig krylov;
  for (int sweep = 0; sweep < 5; ++sweep)
    evolve_images(s, mat, 1.0, 1, krylov);

  for (int i = 0; i < a.size(); ++i) {
    CHECK(s.images.front().raw()[i] == a.raw()[i]);
    CHECK(s.images.back().raw()[i] == b.raw()[i]);
  }
  double drop = 0.0;
  for (std::size_t n = 1; n + 1 < s.images.size(); ++n) {
    const double e = energy(s.images[n], p);
    CHECK(e <= e0[n] + 1e-12);
    drop += e0[n] - e;
  }
  CHECK(drop > 0.0);
}

TEST_CASE("single-moment double well yields the analytic barrier") {
  // One cell with an easy axis along e1 and no chiral terms: the path from
  // +e1 to -e1 relaxes onto a great circle with energy (q/2) sin^2(theta),
  // so the converged string has one interior maximum worth q/2 * volume.
  GridSpec g = film_grid(1, 1, 1);
  PhysicalParams mat = fege80(0.0);
  mat.dmi_D = 0.0;
  mat.Ku = 2.0e4;
  const DimensionlessParams p = nondimensionalize(mat);
  REQUIRE(p.q > 0.0);

  MagnetizationField a(g), b(g);
  a.set_vec(0, Vec3{1, 0, 0});
  b.set_vec(0, Vec3{-1, 0, 0});

  StringSchedule sched;
  sched.tol = 1e-10;
  sched.max_iterations = 20000;
  sched.dt_ps = 4.0;

  const int segments = 8;
  MepReport rep = run_string(a, b, segments, sched, mat);
  CHECK(rep.converged);
  CHECK(rep.iterations > 0);
  REQUIRE(static_cast<int>(rep.images.size()) == segments + 1);

  CHECK(rep.images.front().label == "endpoint");
  CHECK(rep.images.back().label == "endpoint");
  REQUIRE(rep.interior_maxima.size() == 1);
  CHECK(rep.interior_minima.empty());

  const int mid = segments / 2;
  CHECK(rep.interior_maxima[0] == mid);
  CHECK(rep.images[mid].label == "max");

  const double barrier = 0.5 * p.q * g.cell_volume();
  CHECK(rep.images[mid].energy / barrier == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rep.images[mid].energy_J / rep.images[mid].energy ==
        doctest::Approx(energy_scale_J(mat)).epsilon(1e-12));

  // Endpoints never move: energies pin to the analytic minima exactly.
  CHECK(rep.images.front().energy == 0.0);
  CHECK(rep.images.back().energy == 0.0);

  // Uniform arc parameters and symmetric profile.
  for (int n = 0; n <= segments; ++n)
    CHECK(rep.images[n].a ==
          doctest::Approx(double(n) / segments).epsilon(1e-12));
  for (int n = 1; n < segments; ++n)
    CHECK(rep.images[n].energy / rep.images[segments - n].energy ==
          doctest::Approx(1.0).epsilon(1e-2));

  // The converged path matches theta(s) = pi s along its great circle.
  for (int n = 0; n <= segments; ++n) {
    const Vec3 m = rep.path.images[n].vec(0);
    CHECK(m.x == doctest::Approx(std::cos(M_PI * n / segments)).epsilon(1e-3));
  }
}

TEST_CASE("two-dimensional string run keeps endpoints and ordering intact") {
  GridSpec g = film_grid(10, 10, 1);
  const PhysicalParams mat = fege80(0.0);
  MagnetizationField a = new_uniform(g, Vec3{0, 0, 1});
  MagnetizationField b = bloch_skyrmion(g, 0.3);

  StringSchedule sched;
  sched.tol = 1e-6;
  sched.max_iterations = 40;  // smoke run, convergence not required

  MepReport rep = run_string(a, b, 6, sched, mat);
  REQUIRE(rep.images.size() == 7);
  for (int i = 0; i < a.size(); ++i) {
    CHECK(rep.path.images.front().raw()[i] == a.raw()[i]);
    CHECK(rep.path.images.back().raw()[i] == b.raw()[i]);
  }
  const std::vector<double> params = arc_length_params(rep.path);
  for (std::size_t i = 1; i < params.size(); ++i) CHECK(params[i] > params[i - 1]);
  for (const auto& img : rep.images) CHECK(std::isfinite(img.energy));
}
