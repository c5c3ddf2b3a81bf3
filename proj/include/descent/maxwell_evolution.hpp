#pragma once

#include <array>
#include <functional>

#include <nlohmann/json_fwd.hpp>

#include "descent/diagnostics.hpp"
#include "descent/fields.hpp"

namespace descent {

// External four-current sampled at one time.
struct CurrentSample {
  RealField rho;
  std::array<RealField, 3> current;

  static CurrentSample zero(const Grid& g);
};
using CurrentFn = std::function<CurrentSample(double time)>;

// Wraps an analytic current density J(t) and integrates the matching charge
// density with the same trapezoidal rule the solver uses, so the pair
// satisfies discrete continuity to roundoff. Must be sampled in step order.
CurrentFn make_discretely_continuous_source(
    std::function<std::array<RealField, 3>(double)> current_fn, const RealField& rho0, double dt);

// One field-formulation step (E, B arrays): kick-drift-kick leapfrog with
// spectral curls. The homogeneous equations hold identically; the source
// must satisfy discrete continuity
//   (rho_next - rho_now)/dt + div (J_now + J_next)/2 = 0
// within 1e-8 or the step throws. CFL: dt <= 0.5 * min spacing.
void maxwell_step(GaugeFieldState& state, const CurrentSample& now, const CurrentSample& next, double dt);
void maxwell_step(GaugeFieldState& state, double dt);  // source-free

double field_energy(const GaugeFieldState& state);
double divergence_b_max(const GaugeFieldState& state);
// max |div E - rho|; rho must integrate to zero on the torus for this to be
// meaningful (pass a neutralized density otherwise).
double gauss_residual(const GaugeFieldState& state, const RealField& rho);

// The two decoupled 2+1 sectors of the field strength.
struct EebBbeSplit {
  std::array<RealField, 3> eeb;  // E_x, E_y, B_z
  std::array<RealField, 3> bbe;  // B_x, B_y, E_z
};
EebBbeSplit split_sectors(const GaugeFieldState& state);
GaugeFieldState merge_sectors(const EebBbeSplit& split, const Grid& grid, double time = 0.0);

double sector_amplitude(const std::array<RealField, 3>& sector);

// Evolve with monitors (energy, div B, Gauss residual, sector amplitudes).
DiagnosticsSeries run_maxwell(GaugeFieldState& state, const CurrentFn& source, double duration, double dt);

// Full 3D run of z-independent data against the independent 2D run of the
// same data; the runs are mutual oracles. Each leakage field is the largest
// amplitude that sector reaches when it starts empty (0 when it starts
// populated). The source is sampled from t = 0 once per run, so a stateful
// source must tolerate restarting.
struct EebBbeReport {
  double max_deviation = 0.0;
  double leakage_eeb = 0.0;
  double leakage_bbe = 0.0;
  double energy_drift = 0.0;       // relative
  double gauss_residual_max = 0.0;
  double divergence_b_max = 0.0;
  DiagnosticsSeries diagnostics;
  nlohmann::json to_json() const;
};
EebBbeReport eeb_bbe_experiment(const GaugeFieldState& initial3d, const CurrentFn& source, double duration,
                                double dt);

// ---- potential formulation (temporal gauge, 2D reduced system) ----

// E^i = -dA^i/dt and B = curl A for a potentials-form state.
std::array<RealField, 3> derived_electric(const GaugeFieldState& state);
std::array<RealField, 3> derived_magnetic(const GaugeFieldState& state);

// One step of the gauge-fixed reduced potential system,
//   d2/dt2 A^b = lap A^b - d_b(div A_perp) + j^b   (b = 1, 2)
//   d2/dt2 A^3 = lap A^3 + j^3,
// velocity-Verlet in (A, dA/dt). Currents may be null (vacuum).
void potential_step(GaugeFieldState& state, const std::array<RealField, 3>* j_now,
                    const std::array<RealField, 3>* j_next, double dt);

// Verifies that the evolved trajectory satisfies the advertised discrete
// equations (second differences against the spectral right-hand sides) and
// that the transverse pair stays zero when unsourced.
struct PotentialCheckReport {
  double a3_wave_residual = 0.0;
  double transverse_residual = 0.0;
  double transverse_amplitude_max = 0.0;
  DiagnosticsSeries diagnostics;
};
PotentialCheckReport potential_formulation_check(const GaugeFieldState& initial, const CurrentFn& source,
                                                 double duration, double dt);

}  // namespace descent
