#pragma once

#include <array>

#include <nlohmann/json_fwd.hpp>

#include "descent/descent_algebra.hpp"
#include "descent/diagnostics.hpp"
#include "descent/dirac_evolution.hpp"
#include "descent/fields.hpp"
#include "descent/initial_data.hpp"

namespace descent {

// Reduced coupled system in the temporal gauge: a 4-component spinor on a 2D
// grid minimally coupled to (A^1, A^2), plus the freely radiating A^3 channel
// sourced by the g3 cross current.
struct CoupledState {
  SpinorField psi;        // carries mass and charge
  GaugeFieldState gauge;  // potentials form, same grid
  DescentDecomposition decomp;
  double time = 0.0;
};

// Psi(t,x,y,z) = exp(i q Int_0^z A^3 dz') Phi(t,x,y); the integral is the
// cumulative trapezoidal sum along z. The result satisfies the discrete
// covariant descent condition to O(spacing^2) and all bilinears are
// z-independent exactly.
SpinorField covariant_descent_lift(const SpinorField& phi2d, const RealField& a3_3d);

// max over interior z-planes of |central-difference d_z Psi - i q A^3 Psi|.
double covariant_z_derivative_residual(const SpinorField& psi3d, const RealField& a3_3d);

// max z-variation of psi+ M psi over all 16 basis matrices M.
double bilinear_z_variation(const SpinorField& psi3d, const GammaRepresentation& rep);

// Strang splitting: half-step exact free reduced Dirac, full-step local
// minimal-coupling phase exp(i q dt (A^1 a^1 + A^2 a^2)), half-step free
// Dirac; then the potential-form Maxwell step sourced by q Psibar g^mu Psi
// at the two step ends.
class CoupledStepper {
 public:
  CoupledStepper(const CoupledState& prototype, double dt);
  void step(CoupledState& state) const;
  double dt() const { return dt_; }

 private:
  double dt_;
  FreeDiracPropagator half_step_;
  ComplexMatrix alpha1_, alpha2_;
  std::array<ComplexMatrix, 4> current_forms_;  // g0 g^mu
};

void coupled_step(CoupledState& state, double dt);

// Dynamical charge density q (|psi|^2 - mean) and the Gauss residual against
// the derived electric field; the uniform background keeps the periodic
// problem consistent with a net-charged spinor.
RealField neutralized_charge_density(const CoupledState& state);
double coupled_gauss_residual(const CoupledState& state);

// Seed the longitudinal electric field from the spinor charge so Gauss's law
// holds at t = 0.
void initialize_gauss_electric(CoupledState& state);

// Convenience assembly: sector packet + optional transverse potential bumps
// + Gauss-consistent longitudinal field.
CoupledState make_coupled_state(const Grid& grid, const DescentDecomposition& decomp,
                                const PacketSpec& packet, SectorChoice sector, double mass, double charge,
                                double transverse_amplitude = 0.0);

// Evolve with monitors: charge, kappa3 charge, sector norms, Gauss residual,
// spinor-current continuity residual, A^3 amplitude.
DiagnosticsSeries coupled_run(CoupledState& state, double duration, double dt, int sample_stride = 1);

double kappa3_charge_drift(const DiagnosticsSeries& series);

// Superselection: a sector that starts empty stays empty through the coupled
// evolution; runs the mirrored experiment too.
struct SectorVanishingReport {
  double leakage_minus = 0.0;
  double leakage_plus = 0.0;
  double charge_drift = 0.0;
  double kappa3_drift = 0.0;
  double gauss_residual_max = 0.0;
  nlohmann::json to_json() const;
};
SectorVanishingReport sector_vanishing_experiment(const CoupledState& initial, double duration, double dt);

// Pointwise implication: vanishing current forces a vanishing spinor.
struct VanishingFieldReport {
  double max_psi_on_zero_current_region = 0.0;
  double region_fraction = 0.0;
  bool contrapositive_witnessed = false;  // psi != 0 somewhere --> j0 > 0 somewhere
};
VanishingFieldReport vanishing_field_implication_check(const CoupledState& state,
                                                       double current_threshold = 1e-12);

// Evolve the state and its gauge transform psi -> e^{iq chi} psi,
// A^j -> A^j + d_j chi (time-independent chi, temporal gauge preserved) and
// compare the bilinear observables.
struct GaugeEquivalenceReport {
  double max_bilinear_deviation = 0.0;
};
GaugeEquivalenceReport gauge_equivalence_check(const CoupledState& initial, const RealField& chi,
                                               double duration, double dt);

// max pointwise |psi_q(T) - psi_free(T)| between the coupled run and the
// free (q = 0) run from the same initial data.
double coupled_free_deviation(const CoupledState& initial, double duration, double dt);

}  // namespace descent
