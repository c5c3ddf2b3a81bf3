#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "descent/dirac_maxwell.hpp"
#include "descent/fft.hpp"
#include "descent/maxwell_evolution.hpp"
#include "descent/observables.hpp"
#include "test_support.hpp"

using namespace descent;
using namespace descent::test;

namespace {

const DescentDecomposition& decomp() {
  static const DescentDecomposition d = make_descent_decomposition(dirac_representation());
  return d;
}

PacketSpec default_packet(const Grid& g) {
  PacketSpec p;
  p.center = {0.5 * g.lengths[0], 0.5 * g.lengths[1], 0.0};
  p.width = 2.5;
  p.momentum = {2.0 * M_PI / g.lengths[0], 0.0, 0.0};
  return p;
}

}  // namespace

TEST_CASE("covariant lift: zero potential replicates the slice") {
  const Grid g2 = Grid::make_2d(8, 8, 8.0, 8.0);
  const Grid g3 = Grid::make_3d(8, 8, 8, 8.0, 8.0, 8.0);
  const SpinorField phi = make_sector_packet(g2, decomp(), default_packet(g2), SectorChoice::Plus, 1.0, 0.3);

  const SpinorField lifted = covariant_descent_lift(phi, RealField::zeros(g3));
  for (int iz = 0; iz < 8; ++iz)
    for (long p = 0; p < g2.total_points(); ++p)
      for (int c = 0; c < 4; ++c)
        CHECK(lifted.at(c, p + g2.total_points() * iz) == phi.at(c, p));
}

TEST_CASE("covariant lift: constant potential is a pure phase") {
  const Grid g2 = Grid::make_2d(8, 8, 8.0, 8.0);
  const Grid g3 = Grid::make_3d(8, 8, 16, 8.0, 8.0, 8.0);
  const double a3_const = 0.7, q = 0.3;
  SpinorField phi = make_sector_packet(g2, decomp(), default_packet(g2), SectorChoice::Plus, 1.0, q);

  RealField a3 = RealField::zeros(g3);
  for (double& v : a3.values) v = a3_const;
  const SpinorField lifted = covariant_descent_lift(phi, a3);

  const double h = g3.spacing(2);
  for (int iz = 0; iz < 16; ++iz) {
    const cplx expected_phase = std::exp(cplx(0.0, q * a3_const * h * iz));
    for (long p = 0; p < g2.total_points(); ++p)
      for (int c = 0; c < 4; ++c) {
        const cplx got = lifted.at(c, p + g2.total_points() * iz);
        CHECK(std::abs(got - expected_phase * phi.at(c, p)) < 1e-13);
        // |Psi|^2 is z-independent
        CHECK(std::abs(std::norm(got) - std::norm(phi.at(c, p))) < 1e-13);
      }
  }
}

TEST_CASE("covariant lift: random profile keeps all bilinears z-independent") {
  const Grid g2 = Grid::make_2d(8, 8, 8.0, 8.0);
  const Grid g3 = Grid::make_3d(8, 8, 8, 8.0, 8.0, 8.0);
  const SpinorField phi = make_sector_packet(g2, decomp(), default_packet(g2), SectorChoice::Both, 1.0, 0.3);

  Deviates dev(77);
  RealField a3 = RealField::zeros(g3);
  for (double& v : a3.values) v = dev.normal();

  const SpinorField lifted = covariant_descent_lift(phi, a3);
  CHECK(bilinear_z_variation(lifted, decomp().parent) < 1e-10);
}

TEST_CASE("covariant lift satisfies the discrete covariant descent condition to second order") {
  const Grid g2 = Grid::make_2d(8, 8, 8.0, 8.0);
  const SpinorField phi = make_sector_packet(g2, decomp(), default_packet(g2), SectorChoice::Plus, 1.0, 0.4);

  // smooth z-profile sampled at two resolutions
  auto build = [&](int nz) {
    const Grid g3 = Grid::make_3d(8, 8, nz, 8.0, 8.0, 8.0);
    RealField a3 = RealField::zeros(g3);
    for (int iz = 0; iz < nz; ++iz) {
      const double z = iz * g3.spacing(2);
      for (long p = 0; p < g2.total_points(); ++p)
        a3[p + g2.total_points() * iz] = 0.8 * std::sin(2.0 * M_PI * z / 8.0) + 0.3;
    }
    return covariant_z_derivative_residual(covariant_descent_lift(phi, a3), a3);
  };

  const double coarse = build(16);
  const double fine = build(32);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.3));  // O(h^2)
}

TEST_CASE("coupled step with q = 0 reproduces the free composition") {
  const Grid g = Grid::make_2d(16, 16, 16.0, 16.0);
  CoupledState state = make_coupled_state(g, decomp(), default_packet(g), SectorChoice::Both, 1.0, 0.0, 0.2);

  SpinorField free_psi = state.psi;
  GaugeFieldState free_gauge = state.gauge;

  const double dt = 0.01;
  const CoupledStepper stepper(state, dt);
  const FreeDiracPropagator full(g, {decomp().parent, 1.0}, dt);
  for (int n = 0; n < 50; ++n) {
    stepper.step(state);
    full.apply(free_psi);
    potential_step(free_gauge, nullptr, nullptr, dt);
  }

  double psi_diff = 0.0;
  for (std::size_t i = 0; i < free_psi.values.size(); ++i)
    psi_diff = std::max(psi_diff, std::abs(free_psi.values[i] - state.psi.values[i]));
  CHECK(psi_diff < 1e-12);

  double gauge_diff = 0.0;
  for (int c = 1; c < 4; ++c)
    for (long p = 0; p < g.total_points(); ++p)
      gauge_diff = std::max(gauge_diff, std::abs(free_gauge.potential[static_cast<std::size_t>(c)][p] -
                                                 state.gauge.potential[static_cast<std::size_t>(c)][p]));
  CHECK(gauge_diff < 1e-12);
}

TEST_CASE("coupled run conserves charge and keeps the gauss residual small") {
  const Grid g = Grid::make_2d(32, 32, 32.0, 32.0);
  CoupledState state = make_coupled_state(g, decomp(), default_packet(g), SectorChoice::Both, 1.0, 0.3);

  const DiagnosticsSeries series = coupled_run(state, 2.0, 0.005);
  CHECK(series.drift("charge") < 1e-8);
  CHECK(series.max_abs("gauss_residual") < 1e-6);
  CHECK(series.max_abs("current_continuity") < 1e-6);
  CHECK(kappa3_charge_drift(series) < 1e-8);
}

TEST_CASE("zero electromagnetic data with a small charge keeps the gauss residual under 1e-6") {
  // without solving the initial constraint the residual is q (|psi|^2 - mean)
  // itself, so it stays below 1e-6 for small q and barely drifts
  const Grid g = Grid::make_2d(32, 32, 32.0, 32.0);
  PacketSpec packet = default_packet(g);
  packet.momentum = {0.0, 0.0, 0.0};  // packet at rest

  CoupledState state;
  state.psi = make_sector_packet(g, decomp(), packet, SectorChoice::Plus, 1.0, 1.5e-5);
  state.gauge = GaugeFieldState::potentials_on(g);
  state.decomp = decomp();

  const DiagnosticsSeries series = coupled_run(state, 2.0, 0.005);
  CHECK(series.max_abs("gauss_residual") < 1e-6);
  CHECK(series.max_abs("gauss_residual") > 0.0);  // the unsolved constraint is visible
}

TEST_CASE("a pure plus-sector run carries kappa3 charge equal to the total charge") {
  const Grid g = Grid::make_2d(16, 16, 16.0, 16.0);
  CoupledState state = make_coupled_state(g, decomp(), default_packet(g), SectorChoice::Plus, 1.0, 0.3);
  const DiagnosticsSeries series = coupled_run(state, 0.5, 0.01);
  CHECK(series.channel("kappa3_charge").front().second == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(series.last("kappa3_charge") == doctest::Approx(series.last("charge")).epsilon(1e-10));
  CHECK(kappa3_charge_drift(series) < 1e-8);
}

TEST_CASE("an empty sector stays empty through the coupled evolution") {
  const Grid g = Grid::make_2d(16, 16, 16.0, 16.0);
  const CoupledState initial =
      make_coupled_state(g, decomp(), default_packet(g), SectorChoice::Plus, 1.0, 0.3);

  const SectorVanishingReport report = sector_vanishing_experiment(initial, 1.0, 0.01);
  CHECK(report.leakage_minus < 1e-8);
  CHECK(report.leakage_plus < 1e-8);
  CHECK(report.charge_drift < 1e-8);
  CHECK(report.kappa3_drift < 1e-8);

  const CoupledState bad = make_coupled_state(g, decomp(), default_packet(g), SectorChoice::Both, 1.0, 0.3);
  CHECK_THROWS_AS(sector_vanishing_experiment(bad, 0.1, 0.01), std::invalid_argument);
}

TEST_CASE("both sectors source the same transverse field") {
  const Grid g = Grid::make_2d(16, 16, 16.0, 16.0);
  const double duration = 1.0, dt = 0.01;

  auto final_a1 = [&](SectorChoice sector) {
    CoupledState s = make_coupled_state(g, decomp(), default_packet(g), sector, 1.0, 0.4);
    coupled_run(s, duration, dt);
    return s.gauge.potential[1];
  };

  const RealField a1_both = final_a1(SectorChoice::Both);
  const RealField a1_plus = final_a1(SectorChoice::Plus);
  const RealField a1_minus = final_a1(SectorChoice::Minus);

  double diff_plus = 0.0, diff_minus = 0.0;
  for (long p = 0; p < g.total_points(); ++p) {
    diff_plus = std::max(diff_plus, std::abs(a1_both[p] - a1_plus[p]));
    diff_minus = std::max(diff_minus, std::abs(a1_both[p] - a1_minus[p]));
  }
  // the combined run is not reproduced by either isolated sector alone
  CHECK(diff_plus > 1e-10);
  CHECK(diff_minus > 1e-10);
}

TEST_CASE("vanishing current region forces a vanishing spinor") {
  const Grid g = Grid::make_2d(16, 16, 16.0, 16.0);

  // zero state: the implication holds vacuously
  CoupledState zero;
  zero.psi = SpinorField::zeros(g, 4, 1.0, 0.3);
  zero.gauge = GaugeFieldState::potentials_on(g);
  zero.decomp = decomp();
  const VanishingFieldReport vacuous = vanishing_field_implication_check(zero);
  CHECK(vacuous.max_psi_on_zero_current_region == 0.0);
  CHECK(vacuous.region_fraction == 1.0);
  CHECK(vacuous.contrapositive_witnessed);

  // localized packet: the zero-current region carries only the (tiny) tails
  PacketSpec tight = default_packet(g);
  tight.width = 1.0;
  const CoupledState packet = make_coupled_state(g, decomp(), tight, SectorChoice::Plus, 1.0, 0.3);
  const VanishingFieldReport report = vanishing_field_implication_check(packet, 1e-10);
  CHECK(report.contrapositive_witnessed);
  CHECK(report.max_psi_on_zero_current_region < 1e-4);
  // consistency: |psi| on the region squares to at most threshold / |q|
  CHECK(report.max_psi_on_zero_current_region * report.max_psi_on_zero_current_region <=
        1e-10 / 0.3 + 1e-15);
}

TEST_CASE("gauge-equivalent initial data give the same bilinears") {
  const Grid g = Grid::make_2d(32, 32, 32.0, 32.0);
  const CoupledState initial =
      make_coupled_state(g, decomp(), default_packet(g), SectorChoice::Both, 1.0, 0.3, 0.1);

  RealField chi = RealField::zeros(g);
  for (int iy = 0; iy < 32; ++iy)
    for (int ix = 0; ix < 32; ++ix)
      chi[g.index(ix, iy)] = 0.02 * std::cos(2.0 * M_PI * ix / 32.0) * std::cos(4.0 * M_PI * iy / 32.0);

  const GaugeEquivalenceReport report = gauge_equivalence_check(initial, chi, 2.0, 0.005);
  CHECK(report.max_bilinear_deviation < 1e-6);
}

TEST_CASE("coupled trajectory converges to the free one linearly in q") {
  const Grid g = Grid::make_2d(16, 16, 16.0, 16.0);
  PacketSpec packet = default_packet(g);

  auto deviation = [&](double q) {
    const CoupledState initial = make_coupled_state(g, decomp(), packet, SectorChoice::Both, 1.0, q, 0.15);
    return coupled_free_deviation(initial, 1.0, 0.01);
  };

  const double d1 = deviation(0.3);
  const double d2 = deviation(0.15);
  const double d3 = deviation(0.075);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.2));
  CHECK(d2 / d3 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("nan states are detected and reported") {
  const Grid g = Grid::make_2d(8, 8, 8.0, 8.0);
  CoupledState state = make_coupled_state(g, decomp(), default_packet(g), SectorChoice::Plus, 1.0, 0.3);
  state.psi.at(0, 3) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(coupled_step(state, 0.01), std::runtime_error);
}

TEST_CASE("cfl violation in the coupled stepper is rejected") {
  const Grid g = Grid::make_2d(8, 8, 8.0, 8.0);
  CoupledState state = make_coupled_state(g, decomp(), default_packet(g), SectorChoice::Plus, 1.0, 0.3);
  CHECK_THROWS_AS(coupled_step(state, 0.75), std::invalid_argument);
}
