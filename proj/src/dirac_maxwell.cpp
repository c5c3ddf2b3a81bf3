#include "descent/dirac_maxwell.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "descent/fft.hpp"
#include "descent/maxwell_evolution.hpp"
#include "descent/observables.hpp"

namespace descent {

namespace {

const cplx kI(0.0, 1.0);

int step_count(double duration, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("coupled: dt must be positive");
  if (!(duration >= 0.0)) throw std::invalid_argument("coupled: duration must be nonnegative");
  return static_cast<int>(std::llround(duration / dt));
}

void require_coupled_state(const CoupledState& s) {
  if (s.psi.grid.dim != 2 || s.psi.components != 4)
    throw std::invalid_argument("coupled: 4-component spinor on a 2D grid required");
  if (s.gauge.grid != s.psi.grid) throw std::invalid_argument("coupled: grid mismatch");
  s.gauge.require_temporal_gauge();
}

// q Psibar g^mu Psi for mu = 0..3 on the grid.
std::array<RealField, 4> charge_current(const SpinorField& psi, const std::array<ComplexMatrix, 4>& forms) {
  const long npts = psi.grid.total_points();
  std::array<RealField, 4> j{RealField::zeros(psi.grid), RealField::zeros(psi.grid),
                             RealField::zeros(psi.grid), RealField::zeros(psi.grid)};
  for (long p = 0; p < npts; ++p) {
    std::array<cplx, 4> v;
    for (int c = 0; c < 4; ++c) v[static_cast<std::size_t>(c)] = psi.at(c, p);
    for (int mu = 0; mu < 4; ++mu) {
      cplx acc(0.0, 0.0);
      const ComplexMatrix& m = forms[static_cast<std::size_t>(mu)];
      for (int r = 0; r < 4; ++r) {
        cplx mv(0.0, 0.0);
        for (int c = 0; c < 4; ++c) mv += m(r, c) * v[static_cast<std::size_t>(c)];
        acc += std::conj(v[static_cast<std::size_t>(r)]) * mv;
      }
      j[static_cast<std::size_t>(mu)][p] = psi.charge * acc.real();
    }
  }
  return j;
}

}  // namespace

SpinorField covariant_descent_lift(const SpinorField& phi2d, const RealField& a3_3d) {
  if (phi2d.grid.dim != 2 || phi2d.components != 4)
    throw std::invalid_argument("covariant lift: 4-component 2D field required");
  const Grid& g3 = a3_3d.grid;
  if (g3.dim != 3 || g3.points[0] != phi2d.grid.points[0] || g3.points[1] != phi2d.grid.points[1] ||
      g3.lengths[0] != phi2d.grid.lengths[0] || g3.lengths[1] != phi2d.grid.lengths[1])
    throw std::invalid_argument("covariant lift: transverse grids do not match");

  const double q = phi2d.charge;
  const double h = g3.spacing(2);
  const long slice = phi2d.grid.total_points();

  SpinorField psi = SpinorField::zeros(g3, 4, phi2d.mass, phi2d.charge);
  std::vector<double> lambda(static_cast<std::size_t>(slice), 0.0);  // Int_0^z A^3
  for (int iz = 0; iz < g3.points[2]; ++iz) {
    for (long p = 0; p < slice; ++p) {
      if (iz > 0)
        lambda[static_cast<std::size_t>(p)] +=
            0.5 * h * (a3_3d[p + slice * (iz - 1)] + a3_3d[p + slice * iz]);
      const cplx phase = std::exp(kI * q * lambda[static_cast<std::size_t>(p)]);
      for (int c = 0; c < 4; ++c) psi.at(c, p + slice * iz) = phase * phi2d.at(c, p);
    }
  }
  return psi;
}

double covariant_z_derivative_residual(const SpinorField& psi3d, const RealField& a3_3d) {
  const Grid& g = psi3d.grid;
  if (g.dim != 3) throw std::invalid_argument("covariant residual: 3D field required");
  const double q = psi3d.charge;
  const double h = g.spacing(2);
  const long slice = static_cast<long>(g.points[0]) * g.points[1];

  // interior planes only: the lift phase is not z-periodic, so wrapping the
  // stencil across the boundary would be meaningless
  double residual = 0.0;
  for (int c = 0; c < 4; ++c)
    for (int iz = 1; iz + 1 < g.points[2]; ++iz)
      for (long p = 0; p < slice; ++p) {
        const cplx deriv =
            (psi3d.at(c, p + slice * (iz + 1)) - psi3d.at(c, p + slice * (iz - 1))) / (2.0 * h);
        const cplx expected = kI * q * a3_3d[p + slice * iz] * psi3d.at(c, p + slice * iz);
        residual = std::max(residual, std::abs(deriv - expected));
      }
  return residual;
}

double bilinear_z_variation(const SpinorField& psi3d, const GammaRepresentation& rep) {
  const Grid& g = psi3d.grid;
  if (g.dim != 3) throw std::invalid_argument("bilinear variation: 3D field required");
  const std::array<ComplexMatrix, 16> basis = clifford_basis(rep);
  const long slice = static_cast<long>(g.points[0]) * g.points[1];

  double variation = 0.0;
  for (const ComplexMatrix& m : basis) {
    for (long p = 0; p < slice; ++p) {
      cplx reference(0.0, 0.0);
      for (int iz = 0; iz < g.points[2]; ++iz) {
        std::array<cplx, 4> v;
        for (int c = 0; c < 4; ++c) v[static_cast<std::size_t>(c)] = psi3d.at(c, p + slice * iz);
        cplx val(0.0, 0.0);
        for (int r = 0; r < 4; ++r) {
          cplx mv(0.0, 0.0);
          for (int c = 0; c < 4; ++c) mv += m(r, c) * v[static_cast<std::size_t>(c)];
          val += std::conj(v[static_cast<std::size_t>(r)]) * mv;
        }
        if (iz == 0)
          reference = val;
        else
          variation = std::max(variation, std::abs(val - reference));
      }
    }
  }
  return variation;
}

CoupledStepper::CoupledStepper(const CoupledState& prototype, double dt)
    : dt_(dt), half_step_(prototype.psi.grid, {prototype.decomp.parent, prototype.psi.mass}, dt / 2.0) {
  require_coupled_state(prototype);
  if (!(dt > 0.0)) throw std::invalid_argument("coupled: dt must be positive");
  if (dt > 0.5 * prototype.psi.grid.min_spacing())
    throw std::invalid_argument("coupled: dt violates the CFL bound 0.5 * min spacing");
  const GammaRepresentation& rep = prototype.decomp.parent;
  alpha1_ = rep.gamma(0) * rep.gamma(1);
  alpha2_ = rep.gamma(0) * rep.gamma(2);
  for (int mu = 0; mu < 4; ++mu) current_forms_[static_cast<std::size_t>(mu)] = rep.gamma(0) * rep.gamma(mu);
}

void CoupledStepper::step(CoupledState& state) const {
  const double q = state.psi.charge;
  const long npts = state.psi.grid.total_points();

  const std::array<RealField, 4> j_before = charge_current(state.psi, current_forms_);

  // half-step free reduced Dirac
  half_step_.apply(state.psi);

  // full-step local minimal-coupling phase: exp(i q dt (A^1 alpha^1 + A^2 alpha^2))
  if (q != 0.0) {
    for (long p = 0; p < npts; ++p) {
      const double a1 = state.gauge.potential[1][p];
      const double a2 = state.gauge.potential[2][p];
      const double amp = std::hypot(a1, a2);
      if (amp == 0.0) continue;
      const double theta = q * dt_ * amp;
      const ComplexMatrix u = std::cos(theta) * identity_matrix(4) +
                              kI * (std::sin(theta) / amp) * (a1 * alpha1_ + a2 * alpha2_);
      std::array<cplx, 4> v;
      for (int c = 0; c < 4; ++c) v[static_cast<std::size_t>(c)] = state.psi.at(c, p);
      for (int r = 0; r < 4; ++r) {
        cplx acc(0.0, 0.0);
        for (int c = 0; c < 4; ++c) acc += u(r, c) * v[static_cast<std::size_t>(c)];
        state.psi.at(r, p) = acc;
      }
    }
  }

  half_step_.apply(state.psi);

  // Maxwell: (A^1, A^2) sourced by the transverse current, A^3 by the cross
  // current, trapezoidal in the step ends
  const std::array<RealField, 4> j_after = charge_current(state.psi, current_forms_);
  const std::array<RealField, 3> now{j_before[1], j_before[2], j_before[3]};
  const std::array<RealField, 3> next{j_after[1], j_after[2], j_after[3]};
  potential_step(state.gauge, &now, &next, dt_);

  state.time += dt_;

  if (!state.psi.finite())
    throw std::runtime_error("coupled: spinor field became non-finite at t = " + std::to_string(state.time));
}

void coupled_step(CoupledState& state, double dt) { CoupledStepper(state, dt).step(state); }

RealField neutralized_charge_density(const CoupledState& state) {
  RealField rho = RealField::zeros(state.psi.grid);
  for (long p = 0; p < state.psi.grid.total_points(); ++p) {
    double dens = 0.0;
    for (int c = 0; c < 4; ++c) dens += std::norm(state.psi.at(c, p));
    rho[p] = state.psi.charge * dens;
  }
  const double mean = rho.mean();
  for (double& v : rho.values) v -= mean;
  return rho;
}

double coupled_gauss_residual(const CoupledState& state) {
  return gauss_residual(state.gauge, neutralized_charge_density(state));
}

void initialize_gauss_electric(CoupledState& state) {
  require_coupled_state(state);
  const std::array<RealField, 3> e = gauss_electric_field(neutralized_charge_density(state));
  for (int c = 0; c < 3; ++c)
    for (long p = 0; p < state.psi.grid.total_points(); ++p)
      state.gauge.potential_rate[static_cast<std::size_t>(c)][p] = -e[static_cast<std::size_t>(c)][p];
}

CoupledState make_coupled_state(const Grid& grid, const DescentDecomposition& decomp,
                                const PacketSpec& packet, SectorChoice sector, double mass, double charge,
                                double transverse_amplitude) {
  CoupledState state;
  state.psi = make_sector_packet(grid, decomp, packet, sector, mass, charge);
  state.gauge = GaugeFieldState::potentials_on(grid);
  state.decomp = decomp;
  if (transverse_amplitude != 0.0) {
    std::array<double, 3> c1 = packet.center, c2 = packet.center;
    c1[0] += 0.2 * grid.lengths[0];
    c2[1] -= 0.15 * grid.lengths[1];
    state.gauge.potential[1] = make_gaussian_field(grid, c1, 1.5 * packet.width, transverse_amplitude);
    state.gauge.potential[2] = make_gaussian_field(grid, c2, 1.5 * packet.width, transverse_amplitude);
  }
  initialize_gauss_electric(state);
  return state;
}

DiagnosticsSeries coupled_run(CoupledState& state, double duration, double dt, int sample_stride) {
  require_coupled_state(state);
  const int nsteps = step_count(duration, dt);
  const CoupledStepper stepper(state, dt);

  DiagnosticsSeries series;
  auto record = [&](double continuity_residual) {
    series.append("charge", state.time, total_charge(state.psi));
    series.append("kappa3_charge", state.time, kappa3_charge(state.psi, state.decomp));
    series.append("sector_plus_norm", state.time, sector_norm(state.psi, state.decomp.p_plus));
    series.append("sector_minus_norm", state.time, sector_norm(state.psi, state.decomp.p_minus));
    series.append("gauss_residual", state.time, coupled_gauss_residual(state));
    series.append("a3_amplitude", state.time, state.gauge.potential[3].max_abs());
    series.append("current_continuity", state.time, continuity_residual);
  };
  record(0.0);

  const GammaRepresentation& rep = state.decomp.parent;
  std::array<ComplexMatrix, 4> forms;
  for (int mu = 0; mu < 4; ++mu) forms[static_cast<std::size_t>(mu)] = rep.gamma(0) * rep.gamma(mu);

  for (int n = 1; n <= nsteps; ++n) {
    const std::array<RealField, 4> j_before = charge_current(state.psi, forms);
    stepper.step(state);
    if (n % sample_stride == 0 || n == nsteps) {
      // spectral continuity residual of the dynamical current over this step
      const std::array<RealField, 4> j_after = charge_current(state.psi, forms);
      std::array<RealField, 3> j_mid{j_before[1], j_before[2], RealField::zeros(state.psi.grid)};
      for (long p = 0; p < state.psi.grid.total_points(); ++p) {
        j_mid[0][p] = 0.5 * (j_before[1][p] + j_after[1][p]);
        j_mid[1][p] = 0.5 * (j_before[2][p] + j_after[2][p]);
      }
      const RealField div = spectral_divergence(j_mid);
      double residual = 0.0;
      for (long p = 0; p < state.psi.grid.total_points(); ++p)
        residual = std::max(residual, std::abs((j_after[0][p] - j_before[0][p]) / dt + div[p]));
      record(residual);
    }
  }
  return series;
}

double kappa3_charge_drift(const DiagnosticsSeries& series) { return series.drift("kappa3_charge"); }

SectorVanishingReport sector_vanishing_experiment(const CoupledState& initial, double duration, double dt) {
  require_coupled_state(initial);
  if (sector_norm(initial.psi, initial.decomp.p_minus) > 1e-12)
    throw std::invalid_argument("sector vanishing: initial data must have Psi_minus = 0");

  SectorVanishingReport report;

  CoupledState state = initial;
  const DiagnosticsSeries series = coupled_run(state, duration, dt);
  report.leakage_minus = series.max_abs("sector_minus_norm");
  report.charge_drift = series.drift("charge");
  report.kappa3_drift = series.drift("kappa3_charge");
  report.gauss_residual_max = series.max_abs("gauss_residual");

  // mirror: move the packet into the minus sector through the block basis
  CoupledState mirror = initial;
  const long npts = initial.psi.grid.total_points();
  for (long p = 0; p < npts; ++p) {
    Eigen::Vector4cd v;
    for (int c = 0; c < 4; ++c) v(c) = initial.psi.at(c, p);
    const auto [plus, minus] = split_spinor(v, initial.decomp);
    const Eigen::Vector4cd swapped = merge_spinor(minus, plus, initial.decomp);
    for (int c = 0; c < 4; ++c) mirror.psi.at(c, p) = swapped(c);
  }
  initialize_gauss_electric(mirror);
  const DiagnosticsSeries mirror_series = coupled_run(mirror, duration, dt);
  report.leakage_plus = mirror_series.max_abs("sector_plus_norm");
  report.charge_drift = std::max(report.charge_drift, mirror_series.drift("charge"));
  report.kappa3_drift = std::max(report.kappa3_drift, mirror_series.drift("kappa3_charge"));
  report.gauss_residual_max = std::max(report.gauss_residual_max, mirror_series.max_abs("gauss_residual"));
  return report;
}

nlohmann::json SectorVanishingReport::to_json() const {
  nlohmann::json j;
  j["leakage_minus"] = leakage_minus;
  j["leakage_plus"] = leakage_plus;
  j["charge_drift"] = charge_drift;
  j["kappa3_drift"] = kappa3_drift;
  j["gauss_residual_max"] = gauss_residual_max;
  return j;
}

VanishingFieldReport vanishing_field_implication_check(const CoupledState& state,
                                                       double current_threshold) {
  const GammaRepresentation& rep = state.decomp.parent;
  std::array<ComplexMatrix, 4> forms;
  for (int mu = 0; mu < 4; ++mu) forms[static_cast<std::size_t>(mu)] = rep.gamma(0) * rep.gamma(mu);
  const std::array<RealField, 4> j = charge_current(state.psi, forms);

  VanishingFieldReport report;
  const long npts = state.psi.grid.total_points();
  long in_region = 0;
  double max_density = 0.0, max_j0 = 0.0;
  for (long p = 0; p < npts; ++p) {
    double dens = 0.0;
    for (int c = 0; c < 4; ++c) dens += std::norm(state.psi.at(c, p));
    max_density = std::max(max_density, dens);
    max_j0 = std::max(max_j0, std::abs(j[0][p]));
    const bool zero_current = std::abs(j[0][p]) < current_threshold &&
                              std::abs(j[1][p]) < current_threshold &&
                              std::abs(j[2][p]) < current_threshold;
    if (zero_current) {
      ++in_region;
      report.max_psi_on_zero_current_region =
          std::max(report.max_psi_on_zero_current_region, std::sqrt(dens));
    }
  }
  report.region_fraction = static_cast<double>(in_region) / static_cast<double>(npts);
  // contrapositive: a nonzero spinor must show up in j0 = q |psi|^2
  report.contrapositive_witnessed = max_density == 0.0 || max_j0 > 0.0;
  return report;
}

GaugeEquivalenceReport gauge_equivalence_check(const CoupledState& initial, const RealField& chi,
                                               double duration, double dt) {
  require_coupled_state(initial);
  const double q = initial.psi.charge;
  const Grid& g = initial.psi.grid;

  CoupledState plain = initial;
  CoupledState transformed = initial;
  for (long p = 0; p < g.total_points(); ++p) {
    const cplx phase = std::exp(kI * q * chi[p]);
    for (int c = 0; c < 4; ++c) transformed.psi.at(c, p) = phase * initial.psi.at(c, p);
  }
  const RealField dchi_x = spectral_derivative(chi, 0);
  const RealField dchi_y = spectral_derivative(chi, 1);
  for (long p = 0; p < g.total_points(); ++p) {
    transformed.gauge.potential[1][p] += dchi_x[p];
    transformed.gauge.potential[2][p] += dchi_y[p];
  }

  const CoupledStepper stepper_a(plain, dt);
  const CoupledStepper stepper_b(transformed, dt);
  const int nsteps = step_count(duration, dt);

  const std::array<ComplexMatrix, 4> basis_forms = [&] {
    std::array<ComplexMatrix, 4> forms;
    for (int mu = 0; mu < 4; ++mu)
      forms[static_cast<std::size_t>(mu)] = initial.decomp.parent.gamma(0) * initial.decomp.parent.gamma(mu);
    return forms;
  }();

  GaugeEquivalenceReport report;
  auto compare = [&]() {
    const std::array<RealField, 4> ja = charge_current(plain.psi, basis_forms);
    const std::array<RealField, 4> jb = charge_current(transformed.psi, basis_forms);
    for (int mu = 0; mu < 4; ++mu)
      for (long p = 0; p < g.total_points(); ++p)
        report.max_bilinear_deviation =
            std::max(report.max_bilinear_deviation,
                     std::abs(ja[static_cast<std::size_t>(mu)][p] - jb[static_cast<std::size_t>(mu)][p]));
  };
  compare();
  for (int n = 0; n < nsteps; ++n) {
    stepper_a.step(plain);
    stepper_b.step(transformed);
    if ((n + 1) % 20 == 0 || n + 1 == nsteps) compare();
  }
  return report;
}

double coupled_free_deviation(const CoupledState& initial, double duration, double dt) {
  CoupledState charged = initial;
  CoupledState free = initial;
  free.psi.charge = 0.0;

  const CoupledStepper stepper_q(charged, dt);
  const CoupledStepper stepper_0(free, dt);
  const int nsteps = step_count(duration, dt);
  for (int n = 0; n < nsteps; ++n) {
    stepper_q.step(charged);
    stepper_0.step(free);
  }

  double deviation = 0.0;
  for (std::size_t i = 0; i < charged.psi.values.size(); ++i)
    deviation = std::max(deviation, std::abs(charged.psi.values[i] - free.psi.values[i]));
  return deviation;
}

}  // namespace descent
