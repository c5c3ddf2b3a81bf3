#pragma once

#include <array>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "descent/descent_algebra.hpp"
#include "descent/diagnostics.hpp"
#include "descent/fields.hpp"

namespace descent {

// Free Dirac Hamiltonian H(k) = sum_i g0 g^i k_i + g0 m for one Fourier mode.
// Since H(k)^2 = (k^2 + m^2) I, the exact step has the closed form
// exp(-i H dt) = cos(E dt) - i sin(E dt) H / E.
struct DiracHamiltonianSpec {
  GammaRepresentation rep;
  double mass = 0.0;

  int order() const { return rep.order(); }
  ComplexMatrix hamiltonian(const std::array<double, 3>& k) const;
};

// Exact per-mode spectral propagator, cached over the wavenumber lattice.
class FreeDiracPropagator {
 public:
  FreeDiracPropagator(const Grid& grid, const DiracHamiltonianSpec& spec, double dt);

  void apply(SpinorField& psi) const;  // advances by one step of dt
  double dt() const { return dt_; }

 private:
  Grid grid_;
  int order_;
  double dt_;
  std::vector<cplx> modes_;  // total_points blocks of order x order, row-major
};

SpinorField free_step(const SpinorField& psi, const DiracHamiltonianSpec& spec, double dt);

// Dispersion omega = branch * sqrt(k^2 + m^2) and an H(k) eigenvector.
struct PlaneWaveMode {
  double omega = 0.0;
  ComplexVector spinor;
};
PlaneWaveMode plane_wave(const std::array<double, 3>& k, int branch, const DiracHamiltonianSpec& spec);

// Full 3+1 evolution with per-step sector monitors (norm, kappa3 charge,
// and the two sector norms). decomp may be null for plain runs.
DiagnosticsSeries free_run_with_monitors(SpinorField& psi, const DiracHamiltonianSpec& spec,
                                         const DescentDecomposition* decomp, double duration, double dt);

// z-independent 3+1 run versus the pair of independent 2+1 runs of the two
// sector fields; the two routes are mutual oracles.
struct DescentEquivalenceReport {
  double max_deviation = 0.0;   // 3+1 z-slices vs recombined 2+1 pair, pointwise
  double leakage = 0.0;         // max_t ||P_- Psi(t)|| for data starting in range(P+)
  double charge_drift = 0.0;
  double kappa3_drift = 0.0;
  DiagnosticsSeries diagnostics;
  nlohmann::json to_json() const;
};
DescentEquivalenceReport descent_equivalence_experiment(const SpinorField& initial3d,
                                                        const DescentDecomposition& decomp, double duration,
                                                        double dt);

// Massless 3+1 evolution preserves the gamma5 eigensectors.
struct ChiralityReport {
  double opposite_norm_max = 0.0;
  double charge_drift = 0.0;
  DiagnosticsSeries diagnostics;
};
ChiralityReport chirality_split_experiment(const SpinorField& initial, const GammaRepresentation& rep,
                                           double duration, double dt);

// max_z |Psi(x, y, z) - Psi(x, y, 0)| over all components and points.
double z_variation(const SpinorField& psi3d);

}  // namespace descent
