#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "descent/fft.hpp"
#include "descent/initial_data.hpp"
#include "descent/maxwell_evolution.hpp"
#include "test_support.hpp"

using namespace descent;
using namespace descent::test;

TEST_CASE("vacuum standing wave oscillates at |k| with second-order phase error") {
  // exact solution E_y = cos(kt) sin(kx), B_z = -sin(kt) cos(kx)
  const int n = 16;
  const double length = 2.0 * M_PI;
  const Grid g = Grid::make_2d(n, n, length, length);
  const double k = 3.0;
  const double duration = 1.0;

  auto run = [&](double dt) {
    GaugeFieldState s = GaugeFieldState::fields_on(g);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        s.electric[1][g.index(ix, iy)] = std::sin(k * ix * g.spacing(0));
        s.magnetic[2][g.index(ix, iy)] = 0.0;
      }
    const int nsteps = static_cast<int>(std::llround(duration / dt));
    for (int step = 0; step < nsteps; ++step) maxwell_step(s, dt);
    double err = 0.0;
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double x = ix * g.spacing(0);
        err = std::max(err, std::abs(s.electric[1][g.index(ix, iy)] - std::cos(k * duration) * std::sin(k * x)));
        err = std::max(err, std::abs(s.magnetic[2][g.index(ix, iy)] + std::sin(k * duration) * std::cos(k * x)));
      }
    return err;
  };

  const double coarse = run(0.02);
  const double fine = run(0.01);
  CHECK(coarse < 5e-3);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));  // O(dt^2)
}

TEST_CASE("abruptly switched-on static charge pair is rejected") {
  const Grid g = Grid::make_2d(16, 16, 16.0, 16.0);
  GaugeFieldState s = GaugeFieldState::fields_on(g);

  // +/- pair, net neutral, but rho jumps from 0 to rho in one step with J = 0
  RealField rho = RealField::zeros(g);
  rho[g.index(4, 8)] = 1.0;
  rho[g.index(12, 8)] = -1.0;
  const CurrentSample before = CurrentSample::zero(g);
  const CurrentSample after{rho, {RealField::zeros(g), RealField::zeros(g), RealField::zeros(g)}};

  CHECK_THROWS_AS(maxwell_step(s, before, after, 0.1), std::runtime_error);

  // a static pair that was "always on" satisfies continuity and is accepted
  CHECK_NOTHROW(maxwell_step(s, after, after, 0.1));
}

TEST_CASE("zero state with zero source stays zero") {
  const Grid g = Grid::make_2d(8, 8, 8.0, 8.0);
  GaugeFieldState s = GaugeFieldState::fields_on(g);
  for (int n = 0; n < 100; ++n) maxwell_step(s, 0.1);
  for (int c = 0; c < 3; ++c) {
    CHECK(s.electric[static_cast<std::size_t>(c)].max_abs() == 0.0);
    CHECK(s.magnetic[static_cast<std::size_t>(c)].max_abs() == 0.0);
  }
}

TEST_CASE("cfl violation is rejected") {
  const Grid g = Grid::make_2d(8, 8, 8.0, 8.0);  // spacing 1
  GaugeFieldState s = GaugeFieldState::fields_on(g);
  CHECK_THROWS_AS(maxwell_step(s, 0.6), std::invalid_argument);
}

TEST_CASE("divergence of B and energy are preserved over long source-free runs") {
  const Grid g = Grid::make_2d(32, 32, 32.0, 32.0);
  GaugeFieldState s = make_eeb_initial(g, {16.0, 16.0, 0.0}, 4.0, 1.0);
  // add a BBE part so all six components are active
  const GaugeFieldState bbe = make_bbe_initial(g, {12.0, 20.0, 0.0}, 4.0, 0.5);
  for (int c = 0; c < 3; ++c)
    for (long p = 0; p < g.total_points(); ++p) {
      s.electric[static_cast<std::size_t>(c)][p] += bbe.electric[static_cast<std::size_t>(c)][p];
      s.magnetic[static_cast<std::size_t>(c)][p] += bbe.magnetic[static_cast<std::size_t>(c)][p];
    }

  const double e0 = field_energy(s);
  REQUIRE(e0 > 0.0);
  double div_b = 0.0, energy_dev = 0.0;
  for (int n = 0; n < 1000; ++n) {
    maxwell_step(s, 0.005);
    div_b = std::max(div_b, divergence_b_max(s));
    energy_dev = std::max(energy_dev, std::abs(field_energy(s) - e0) / e0);
  }
  CHECK(div_b < 1e-10);
  CHECK(energy_dev < 1e-6);
}

TEST_CASE("gauss residual stays at roundoff for a discretely continuous source") {
  const Grid g = Grid::make_2d(16, 16, 16.0, 16.0);
  const double dt = 0.05;

  // oscillating dipole current; charge integrated to match discretely
  auto j_fn = [&](double t) {
    std::array<RealField, 3> j{RealField::zeros(g), RealField::zeros(g), RealField::zeros(g)};
    const RealField bump = make_gaussian_field(g, {8.0, 8.0, 0.0}, 2.0, 0.1);
    for (long p = 0; p < g.total_points(); ++p) j[0][p] = bump[p] * std::sin(0.7 * t);
    return j;
  };
  const CurrentFn source = make_discretely_continuous_source(j_fn, RealField::zeros(g), dt);

  GaugeFieldState s = GaugeFieldState::fields_on(g);
  const DiagnosticsSeries series = run_maxwell(s, source, 5.0, dt);
  CHECK(series.max_abs("gauss_residual") < 1e-8);
  CHECK(series.max_abs("div_b") < 1e-10);
}

TEST_CASE("eeb and bbe sectors stay decoupled for z-independent data") {
  const Grid g2 = Grid::make_2d(16, 16, 16.0, 16.0);
  const int nz = 4;

  // EEB-only data: the BBE sector must stay at roundoff
  {
    const GaugeFieldState initial = replicate_fields_along_z(
        make_eeb_initial(g2, {8.0, 8.0, 0.0}, 2.5, 1.0), nz, 4.0);
    const EebBbeReport report = eeb_bbe_experiment(initial, nullptr, 2.0, 0.01);
    CHECK(report.leakage_bbe < 1e-10);
    CHECK(report.max_deviation < 1e-10);
    CHECK(report.divergence_b_max < 1e-10);
  }

  // BBE-only data: the EEB sector must stay at roundoff
  {
    const GaugeFieldState initial = replicate_fields_along_z(
        make_bbe_initial(g2, {8.0, 8.0, 0.0}, 2.5, 1.0), nz, 4.0);
    const EebBbeReport report = eeb_bbe_experiment(initial, nullptr, 2.0, 0.01);
    CHECK(report.leakage_eeb < 1e-10);
    CHECK(report.max_deviation < 1e-10);
  }
}

TEST_CASE("z-dependent data couples the sectors") {
  const Grid g3 = Grid::make_3d(8, 8, 8, 8.0, 8.0, 8.0);
  GaugeFieldState s = GaugeFieldState::fields_on(g3);
  // E_x = sin(2 pi z / L) cos(2 pi y / L): divergence-free, EEB-only, z-dependent
  for (int iz = 0; iz < 8; ++iz)
    for (int iy = 0; iy < 8; ++iy)
      for (int ix = 0; ix < 8; ++ix)
        s.electric[0][g3.index(ix, iy, iz)] =
            std::sin(2.0 * M_PI * iz / 8.0) * std::cos(2.0 * M_PI * iy / 8.0);

  CHECK_THROWS_AS(eeb_bbe_experiment(s, nullptr, 0.1, 0.01), std::invalid_argument);

  double bbe_amp = 0.0;
  for (int n = 0; n < 100; ++n) {
    maxwell_step(s, 0.01);
    bbe_amp = std::max(bbe_amp, sector_amplitude(split_sectors(s).bbe));
  }
  CHECK(bbe_amp > 1e-3);
}

TEST_CASE("sector split reassembles the full state") {
  const Grid g = Grid::make_2d(8, 8, 8.0, 8.0);
  Deviates dev(5);
  GaugeFieldState s = GaugeFieldState::fields_on(g);
  for (int c = 0; c < 3; ++c)
    for (long p = 0; p < g.total_points(); ++p) {
      s.electric[static_cast<std::size_t>(c)][p] = dev.normal();
      s.magnetic[static_cast<std::size_t>(c)][p] = dev.normal();
    }
  const GaugeFieldState merged = merge_sectors(split_sectors(s), g, s.time);
  for (int c = 0; c < 3; ++c)
    for (long p = 0; p < g.total_points(); ++p) {
      CHECK(merged.electric[static_cast<std::size_t>(c)][p] == s.electric[static_cast<std::size_t>(c)][p]);
      CHECK(merged.magnetic[static_cast<std::size_t>(c)][p] == s.magnetic[static_cast<std::size_t>(c)][p]);
    }
}

TEST_CASE("gauge-fixed A3 obeys the 2D wave equation") {
  const int n = 16;
  const double length = 2.0 * M_PI;
  const Grid g = Grid::make_2d(n, n, length, length);
  const double k = 2.0;

  // single mode: A3(t) = cos(kt) cos(kx), discrete dispersion within O(dt^2)
  GaugeFieldState s = GaugeFieldState::potentials_on(g);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) s.potential[3][g.index(ix, iy)] = std::cos(k * ix * g.spacing(0));

  const double dt = 0.005;
  const PotentialCheckReport report = potential_formulation_check(s, nullptr, 2.0, dt);
  CHECK(report.a3_wave_residual < 1e-8);
  CHECK(report.transverse_residual < 1e-8);
  CHECK(report.transverse_amplitude_max == 0.0);  // decoupled under the gauge fix

  GaugeFieldState evolved = s;
  const int nsteps = static_cast<int>(std::llround(2.0 / dt));
  for (int step = 0; step < nsteps; ++step) potential_step(evolved, nullptr, nullptr, dt);
  double err = 0.0;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      err = std::max(err, std::abs(evolved.potential[3][g.index(ix, iy)] -
                                   std::cos(k * 2.0) * std::cos(k * ix * g.spacing(0))));
  CHECK(err < 1e-3);  // phase error O(dt^2 k^3 T)
}

TEST_CASE("uniform j3 drives quadratic growth of the A3 zero mode") {
  const Grid g = Grid::make_2d(8, 8, 8.0, 8.0);
  GaugeFieldState s = GaugeFieldState::potentials_on(g);
  const double c = 0.3, dt = 0.01, duration = 1.0;

  std::array<RealField, 3> j{RealField::zeros(g), RealField::zeros(g), RealField::zeros(g)};
  for (long p = 0; p < g.total_points(); ++p) j[2][p] = c;

  const int nsteps = static_cast<int>(std::llround(duration / dt));
  for (int step = 0; step < nsteps; ++step) potential_step(s, &j, &j, dt);

  // k = 0 mode obeys a3'' = c exactly under velocity Verlet
  for (long p = 0; p < g.total_points(); ++p)
    CHECK(s.potential[3][p] == doctest::Approx(0.5 * c * duration * duration).epsilon(1e-10));
  CHECK(s.potential[1].max_abs() == 0.0);
  CHECK(s.potential[2].max_abs() == 0.0);
}

TEST_CASE("potential check report flags transverse sources correctly") {
  const Grid g = Grid::make_2d(16, 16, 16.0, 16.0);
  GaugeFieldState s = GaugeFieldState::potentials_on(g);
  // transverse wave packet in A1 with everything else zero
  s.potential[1] = make_gaussian_field(g, {8.0, 8.0, 0.0}, 2.0, 0.5);
  const PotentialCheckReport report = potential_formulation_check(s, nullptr, 1.0, 0.01);
  CHECK(report.transverse_residual < 1e-8);
  CHECK(report.a3_wave_residual < 1e-8);
  CHECK(report.diagnostics.max_abs("a_perp_max") > 0.1);
}
