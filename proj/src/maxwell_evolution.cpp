#include <memory>
#include "descent/maxwell_evolution.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "descent/fft.hpp"

namespace descent {

namespace {

constexpr double kContinuityTol = 1e-8;

void check_cfl(const Grid& grid, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("maxwell: dt must be positive");
  if (dt > 0.5 * grid.min_spacing())
    throw std::invalid_argument("maxwell: dt violates the CFL bound 0.5 * min spacing");
}

void axpy(std::array<RealField, 3>& y, double a, const std::array<RealField, 3>& x) {
  for (int c = 0; c < 3; ++c)
    for (long i = 0; i < y[static_cast<std::size_t>(c)].grid.total_points(); ++i)
      y[static_cast<std::size_t>(c)][i] += a * x[static_cast<std::size_t>(c)][i];
}

int step_count(double duration, double dt) {
  if (!(duration >= 0.0)) throw std::invalid_argument("maxwell: duration must be nonnegative");
  return static_cast<int>(std::llround(duration / dt));
}

}  // namespace

CurrentSample CurrentSample::zero(const Grid& g) {
  return CurrentSample{RealField::zeros(g), {RealField::zeros(g), RealField::zeros(g), RealField::zeros(g)}};
}

CurrentFn make_discretely_continuous_source(
    std::function<std::array<RealField, 3>(double)> current_fn, const RealField& rho0, double dt) {
  struct State {
    std::function<std::array<RealField, 3>(double)> j;
    RealField rho;
    std::array<RealField, 3> j_prev;
    double t_prev = 0.0;
    double dt = 0.0;
    bool started = false;
  };
  auto state = std::make_shared<State>();
  state->j = std::move(current_fn);
  state->rho = rho0;
  state->dt = dt;

  return [state](double t) -> CurrentSample {
    std::array<RealField, 3> j_now = state->j(t);
    if (!state->started) {
      state->started = true;
    } else {
      // trapezoidal continuity: rho_{n+1} = rho_n - dt/2 div(J_n + J_{n+1})
      std::array<RealField, 3> j_sum = state->j_prev;
      axpy(j_sum, 1.0, j_now);
      const RealField div = spectral_divergence(j_sum);
      const double expected = state->t_prev + state->dt;
      if (std::abs(t - expected) > 1e-9 * std::max(1.0, std::abs(t)))
        throw std::invalid_argument("discretely continuous source: samples must advance by dt");
      for (long i = 0; i < state->rho.grid.total_points(); ++i)
        state->rho[i] -= 0.5 * state->dt * div[i];
    }
    state->t_prev = t;
    state->j_prev = j_now;
    return CurrentSample{state->rho, j_now};
  };
}

void maxwell_step(GaugeFieldState& state, const CurrentSample& now, const CurrentSample& next, double dt) {
  if (state.form != GaugeFieldState::Form::Fields)
    throw std::invalid_argument("maxwell_step: fields-form state required");
  check_cfl(state.grid, dt);

  // discrete continuity of the external source
  {
    std::array<RealField, 3> j_sum = now.current;
    axpy(j_sum, 1.0, next.current);
    const RealField div = spectral_divergence(j_sum);
    double residual = 0.0;
    for (long i = 0; i < state.grid.total_points(); ++i)
      residual = std::max(residual, std::abs((next.rho[i] - now.rho[i]) / dt + 0.5 * div[i]));
    if (residual > kContinuityTol)
      throw std::runtime_error("maxwell_step: source violates discrete continuity (residual " +
                               std::to_string(residual) + ")");
  }

  // kick-drift-kick: B half step, E full step, B half step
  std::array<RealField, 3> curl_e = spectral_curl(state.electric);
  axpy(state.magnetic, -0.5 * dt, curl_e);

  const std::array<RealField, 3> curl_b = spectral_curl(state.magnetic);
  axpy(state.electric, dt, curl_b);
  axpy(state.electric, -0.5 * dt, now.current);
  axpy(state.electric, -0.5 * dt, next.current);

  curl_e = spectral_curl(state.electric);
  axpy(state.magnetic, -0.5 * dt, curl_e);

  state.time += dt;
}

void maxwell_step(GaugeFieldState& state, double dt) {
  const CurrentSample zero = CurrentSample::zero(state.grid);
  maxwell_step(state, zero, zero, dt);
}

double field_energy(const GaugeFieldState& state) {
  const std::array<RealField, 3> e =
      state.form == GaugeFieldState::Form::Fields ? state.electric : derived_electric(state);
  const std::array<RealField, 3> b =
      state.form == GaugeFieldState::Form::Fields ? state.magnetic : derived_magnetic(state);
  double sum = 0.0;
  for (int c = 0; c < 3; ++c)
    for (long i = 0; i < state.grid.total_points(); ++i)
      sum += e[static_cast<std::size_t>(c)][i] * e[static_cast<std::size_t>(c)][i] +
             b[static_cast<std::size_t>(c)][i] * b[static_cast<std::size_t>(c)][i];
  return 0.5 * sum * state.grid.cell_volume();
}

double divergence_b_max(const GaugeFieldState& state) {
  const std::array<RealField, 3> b =
      state.form == GaugeFieldState::Form::Fields ? state.magnetic : derived_magnetic(state);
  return spectral_divergence(b).max_abs();
}

double gauss_residual(const GaugeFieldState& state, const RealField& rho) {
  const std::array<RealField, 3> e =
      state.form == GaugeFieldState::Form::Fields ? state.electric : derived_electric(state);
  const RealField div = spectral_divergence(e);
  double residual = 0.0;
  for (long i = 0; i < state.grid.total_points(); ++i)
    residual = std::max(residual, std::abs(div[i] - rho[i]));
  return residual;
}

EebBbeSplit split_sectors(const GaugeFieldState& state) {
  if (state.form != GaugeFieldState::Form::Fields)
    throw std::invalid_argument("split_sectors: fields-form state required");
  return EebBbeSplit{{state.electric[0], state.electric[1], state.magnetic[2]},
                     {state.magnetic[0], state.magnetic[1], state.electric[2]}};
}

GaugeFieldState merge_sectors(const EebBbeSplit& split, const Grid& grid, double time) {
  GaugeFieldState s = GaugeFieldState::fields_on(grid);
  s.time = time;
  s.electric[0] = split.eeb[0];
  s.electric[1] = split.eeb[1];
  s.magnetic[2] = split.eeb[2];
  s.magnetic[0] = split.bbe[0];
  s.magnetic[1] = split.bbe[1];
  s.electric[2] = split.bbe[2];
  return s;
}

double sector_amplitude(const std::array<RealField, 3>& sector) {
  double amp = 0.0;
  for (int c = 0; c < 3; ++c) amp = std::max(amp, sector[static_cast<std::size_t>(c)].max_abs());
  return amp;
}

DiagnosticsSeries run_maxwell(GaugeFieldState& state, const CurrentFn& source, double duration, double dt) {
  const int nsteps = step_count(duration, dt);
  DiagnosticsSeries series;

  CurrentSample now = source ? source(state.time) : CurrentSample::zero(state.grid);
  auto record = [&](const CurrentSample& sample) {
    const EebBbeSplit split = split_sectors(state);
    series.append("energy", state.time, field_energy(state));
    series.append("div_b", state.time, divergence_b_max(state));
    series.append("gauss_residual", state.time, gauss_residual(state, sample.rho));
    series.append("eeb_amplitude", state.time, sector_amplitude(split.eeb));
    series.append("bbe_amplitude", state.time, sector_amplitude(split.bbe));
  };
  record(now);
  for (int n = 0; n < nsteps; ++n) {
    CurrentSample next = source ? source(state.time + dt) : CurrentSample::zero(state.grid);
    maxwell_step(state, now, next, dt);
    record(next);
    now = std::move(next);
  }
  return series;
}

EebBbeReport eeb_bbe_experiment(const GaugeFieldState& initial3d, const CurrentFn& source, double duration,
                                double dt) {
  if (initial3d.grid.dim != 3) throw std::invalid_argument("eeb/bbe experiment: 3D state required");
  if (initial3d.form != GaugeFieldState::Form::Fields)
    throw std::invalid_argument("eeb/bbe experiment: fields-form state required");

  // z-independence of the inputs is part of the contract
  const Grid& g3 = initial3d.grid;
  const long slice = static_cast<long>(g3.points[0]) * g3.points[1];
  double zvar = 0.0;
  for (const auto* fields : {&initial3d.electric, &initial3d.magnetic})
    for (int c = 0; c < 3; ++c)
      for (int iz = 1; iz < g3.points[2]; ++iz)
        for (long p = 0; p < slice; ++p)
          zvar = std::max(zvar, std::abs((*fields)[static_cast<std::size_t>(c)][p + slice * iz] -
                                         (*fields)[static_cast<std::size_t>(c)][p]));
  if (zvar > 1e-12) throw std::invalid_argument("eeb/bbe experiment: initial data not z-independent");

  const EebBbeSplit initial_split = split_sectors(initial3d);
  const double eeb0 = sector_amplitude(initial_split.eeb);
  const double bbe0 = sector_amplitude(initial_split.bbe);

  EebBbeReport report;

  // full 3D run
  GaugeFieldState full = initial3d;
  report.diagnostics = run_maxwell(full, source, duration, dt);

  // independent 2D run of the same data (the grid restriction of the solver
  // is the pair of decoupled 2D sector solvers)
  const Grid g2 = Grid::make_2d(g3.points[0], g3.points[1], g3.lengths[0], g3.lengths[1]);
  GaugeFieldState reduced = GaugeFieldState::fields_on(g2);
  for (int c = 0; c < 3; ++c)
    for (long p = 0; p < slice; ++p) {
      reduced.electric[static_cast<std::size_t>(c)][p] = initial3d.electric[static_cast<std::size_t>(c)][p];
      reduced.magnetic[static_cast<std::size_t>(c)][p] = initial3d.magnetic[static_cast<std::size_t>(c)][p];
    }
  CurrentFn source2d;
  if (source) {
    source2d = [&source, &g2, slice](double t) {
      // restrict the z-independent 3D source to the z = 0 plane
      CurrentSample s3 = source(t);
      CurrentSample s2 = CurrentSample::zero(g2);
      for (long p = 0; p < slice; ++p) {
        s2.rho[p] = s3.rho[p];
        for (int c = 0; c < 3; ++c)
          s2.current[static_cast<std::size_t>(c)][p] = s3.current[static_cast<std::size_t>(c)][p];
      }
      return s2;
    };
  }
  const DiagnosticsSeries reduced_series = run_maxwell(reduced, source2d, duration, dt);

  // deviation: every z-slice of the full run against the 2D run
  for (int c = 0; c < 3; ++c)
    for (int iz = 0; iz < g3.points[2]; ++iz)
      for (long p = 0; p < slice; ++p) {
        report.max_deviation =
            std::max(report.max_deviation, std::abs(full.electric[static_cast<std::size_t>(c)][p + slice * iz] -
                                                    reduced.electric[static_cast<std::size_t>(c)][p]));
        report.max_deviation =
            std::max(report.max_deviation, std::abs(full.magnetic[static_cast<std::size_t>(c)][p + slice * iz] -
                                                    reduced.magnetic[static_cast<std::size_t>(c)][p]));
      }

  // leakage is only meaningful for a sector that starts empty
  if (eeb0 < 1e-12) report.leakage_eeb = report.diagnostics.max_abs("eeb_amplitude");
  if (bbe0 < 1e-12) report.leakage_bbe = report.diagnostics.max_abs("bbe_amplitude");

  const auto& energy = report.diagnostics.channel("energy");
  const double e0 = energy.front().second;
  if (e0 > 0.0) report.energy_drift = report.diagnostics.drift("energy") / e0;
  report.gauss_residual_max = report.diagnostics.max_abs("gauss_residual");
  report.divergence_b_max = report.diagnostics.max_abs("div_b");
  return report;
}

nlohmann::json EebBbeReport::to_json() const {
  nlohmann::json j;
  j["leakage_eeb"] = leakage_eeb;
  j["leakage_bbe"] = leakage_bbe;
  j["energy_drift"] = energy_drift;
  j["gauss_residual"] = gauss_residual_max;
  j["max_deviation"] = max_deviation;
  j["div_b"] = divergence_b_max;
  return j;
}

std::array<RealField, 3> derived_electric(const GaugeFieldState& state) {
  state.require_temporal_gauge();
  std::array<RealField, 3> e{RealField::zeros(state.grid), RealField::zeros(state.grid),
                             RealField::zeros(state.grid)};
  for (int c = 0; c < 3; ++c)
    for (long i = 0; i < state.grid.total_points(); ++i)
      e[static_cast<std::size_t>(c)][i] = -state.potential_rate[static_cast<std::size_t>(c)][i];
  return e;
}

std::array<RealField, 3> derived_magnetic(const GaugeFieldState& state) {
  state.require_temporal_gauge();
  return spectral_curl({state.potential[1], state.potential[2], state.potential[3]});
}

namespace {

// Right-hand side of the gauge-fixed reduced potential system.
std::array<RealField, 3> potential_acceleration(const GaugeFieldState& state,
                                                const std::array<RealField, 3>* j) {
  const Grid& g = state.grid;
  RealField div_perp = spectral_derivative(state.potential[1], 0);
  {
    const RealField dy = spectral_derivative(state.potential[2], 1);
    for (long i = 0; i < g.total_points(); ++i) div_perp[i] += dy[i];
  }

  std::array<RealField, 3> acc;
  for (int b = 0; b < 2; ++b) {
    acc[static_cast<std::size_t>(b)] = spectral_laplacian(state.potential[static_cast<std::size_t>(b + 1)]);
    const RealField grad = spectral_derivative(div_perp, b);
    for (long i = 0; i < g.total_points(); ++i) acc[static_cast<std::size_t>(b)][i] -= grad[i];
  }
  acc[2] = spectral_laplacian(state.potential[3]);

  if (j)
    for (int c = 0; c < 3; ++c)
      for (long i = 0; i < g.total_points(); ++i)
        acc[static_cast<std::size_t>(c)][i] += (*j)[static_cast<std::size_t>(c)][i];
  return acc;
}

}  // namespace

void potential_step(GaugeFieldState& state, const std::array<RealField, 3>* j_now,
                    const std::array<RealField, 3>* j_next, double dt) {
  state.require_temporal_gauge();
  if (state.grid.dim != 2) throw std::invalid_argument("potential_step: 2D reduced system only");
  check_cfl(state.grid, dt);

  std::array<RealField, 3> acc = potential_acceleration(state, j_now);
  axpy(state.potential_rate, 0.5 * dt, acc);
  for (int c = 0; c < 3; ++c)
    for (long i = 0; i < state.grid.total_points(); ++i)
      state.potential[static_cast<std::size_t>(c + 1)][i] += dt * state.potential_rate[static_cast<std::size_t>(c)][i];
  acc = potential_acceleration(state, j_next);
  axpy(state.potential_rate, 0.5 * dt, acc);
  state.time += dt;
}

PotentialCheckReport potential_formulation_check(const GaugeFieldState& initial, const CurrentFn& source,
                                                 double duration, double dt) {
  GaugeFieldState state = initial;
  state.require_temporal_gauge();
  const Grid& g = state.grid;
  const int nsteps = step_count(duration, dt);

  PotentialCheckReport report;
  const bool transverse_unsourced =
      state.potential[1].max_abs() == 0.0 && state.potential[2].max_abs() == 0.0 &&
      state.potential_rate[0].max_abs() == 0.0 && state.potential_rate[1].max_abs() == 0.0;

  std::array<RealField, 4> prev = state.potential;
  CurrentSample now = source ? source(state.time) : CurrentSample::zero(g);
  bool have_prev = false;

  for (int n = 0; n < nsteps; ++n) {
    const CurrentSample next = source ? source(state.time + dt) : CurrentSample::zero(g);
    const std::array<RealField, 4> here = state.potential;
    const CurrentSample here_sample = now;
    potential_step(state, &now.current, &next.current, dt);

    if (have_prev) {
      // the trajectory must satisfy the advertised discrete wave equations
      const RealField lap3 = spectral_laplacian(here[3]);
      RealField div_perp = spectral_derivative(here[1], 0);
      {
        const RealField dy = spectral_derivative(here[2], 1);
        for (long i = 0; i < g.total_points(); ++i) div_perp[i] += dy[i];
      }
      for (long i = 0; i < g.total_points(); ++i) {
        const double second = (state.potential[3][i] - 2.0 * here[3][i] + prev[3][i]) / (dt * dt);
        const double rhs = lap3[i] + here_sample.current[2][i];
        report.a3_wave_residual = std::max(report.a3_wave_residual, std::abs(second - rhs));
      }
      for (int b = 0; b < 2; ++b) {
        const RealField lap = spectral_laplacian(here[static_cast<std::size_t>(b + 1)]);
        const RealField grad = spectral_derivative(div_perp, b);
        for (long i = 0; i < g.total_points(); ++i) {
          const double second = (state.potential[static_cast<std::size_t>(b + 1)][i] -
                                 2.0 * here[static_cast<std::size_t>(b + 1)][i] +
                                 prev[static_cast<std::size_t>(b + 1)][i]) /
                                (dt * dt);
          const double rhs = lap[i] - grad[i] + here_sample.current[static_cast<std::size_t>(b)][i];
          report.transverse_residual = std::max(report.transverse_residual, std::abs(second - rhs));
        }
      }
    }
    prev = here;
    have_prev = true;
    now = next;

    report.diagnostics.append("a3_max", state.time, state.potential[3].max_abs());
    report.diagnostics.append("a_perp_max", state.time,
                              std::max(state.potential[1].max_abs(), state.potential[2].max_abs()));
    if (transverse_unsourced)
      report.transverse_amplitude_max =
          std::max(report.transverse_amplitude_max,
                   std::max(state.potential[1].max_abs(), state.potential[2].max_abs()));
  }
  return report;
}

}  // namespace descent
