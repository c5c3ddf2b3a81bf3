#include "descent/dirac_evolution.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "descent/fft.hpp"
#include "descent/observables.hpp"

namespace descent {

namespace {

const cplx kI(0.0, 1.0);

int step_count(double duration, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("evolution: dt must be positive");
  if (!(duration >= 0.0)) throw std::invalid_argument("evolution: duration must be nonnegative");
  return static_cast<int>(std::llround(duration / dt));
}

}  // namespace

ComplexMatrix DiracHamiltonianSpec::hamiltonian(const std::array<double, 3>& k) const {
  const ComplexMatrix& g0 = rep.gamma(0);
  ComplexMatrix h = mass * g0;
  for (int i = 1; i < rep.count(); ++i) h += k[static_cast<std::size_t>(i - 1)] * (g0 * rep.gamma(i));
  return h;
}

FreeDiracPropagator::FreeDiracPropagator(const Grid& grid, const DiracHamiltonianSpec& spec, double dt)
    : grid_(grid), order_(spec.order()), dt_(dt) {
  if (!std::isfinite(dt)) throw std::invalid_argument("FreeDiracPropagator: dt must be finite");
  if (spec.rep.count() - 1 < grid.dim)
    throw std::invalid_argument("FreeDiracPropagator: representation has too few spatial gammas for the grid");
  require_valid(spec.rep);

  const long npts = grid.total_points();
  const std::size_t block = static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_);
  modes_.resize(static_cast<std::size_t>(npts) * block);

  const std::vector<double> kx = grid.wavenumbers(0);
  const std::vector<double> ky = grid.wavenumbers(1);
  const std::vector<double> kz = grid.dim == 3 ? grid.wavenumbers(2) : std::vector<double>{0.0};
  const ComplexMatrix id = identity_matrix(order_);

  long p = 0;
  for (int iz = 0; iz < grid.points[2]; ++iz)
    for (int iy = 0; iy < grid.points[1]; ++iy)
      for (int ix = 0; ix < grid.points[0]; ++ix, ++p) {
        const std::array<double, 3> k{kx[static_cast<std::size_t>(ix)], ky[static_cast<std::size_t>(iy)],
                                      kz[static_cast<std::size_t>(iz)]};
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        const double energy = std::sqrt(k2 + spec.mass * spec.mass);

        // H^2 = (k^2 + m^2) I gives the exact exponential in closed form.
        ComplexMatrix u;
        if (energy == 0.0) {
          u = id;
        } else {
          const ComplexMatrix h = spec.hamiltonian(k);
          u = std::cos(energy * dt) * id - kI * (std::sin(energy * dt) / energy) * h;
        }
        cplx* dst = &modes_[static_cast<std::size_t>(p) * block];
        for (int r = 0; r < order_; ++r)
          for (int c = 0; c < order_; ++c) dst[r * order_ + c] = u(r, c);
      }
}

void FreeDiracPropagator::apply(SpinorField& psi) const {
  if (psi.grid != grid_) throw std::invalid_argument("FreeDiracPropagator: grid mismatch");
  if (psi.components != order_)
    throw std::invalid_argument("FreeDiracPropagator: component count does not match representation order");

  dft_inplace(grid_, psi.values.data(), psi.components, -1);

  const std::size_t npts = static_cast<std::size_t>(grid_.total_points());
  const std::size_t block = static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_);
  std::array<cplx, 4> in{};
  for (std::size_t p = 0; p < npts; ++p) {
    const cplx* u = &modes_[p * block];
    for (int c = 0; c < order_; ++c) in[static_cast<std::size_t>(c)] = psi.values[static_cast<std::size_t>(c) * npts + p];
    for (int r = 0; r < order_; ++r) {
      cplx acc(0.0, 0.0);
      for (int c = 0; c < order_; ++c) acc += u[r * order_ + c] * in[static_cast<std::size_t>(c)];
      psi.values[static_cast<std::size_t>(r) * npts + p] = acc;
    }
  }

  dft_inplace(grid_, psi.values.data(), psi.components, 1);
}

SpinorField free_step(const SpinorField& psi, const DiracHamiltonianSpec& spec, double dt) {
  SpinorField out = psi;
  FreeDiracPropagator(psi.grid, spec, dt).apply(out);
  return out;
}

PlaneWaveMode plane_wave(const std::array<double, 3>& k, int branch, const DiracHamiltonianSpec& spec) {
  if (branch != 1 && branch != -1) throw std::invalid_argument("plane_wave: branch must be +1 or -1");
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  const double energy = std::sqrt(k2 + spec.mass * spec.mass);

  PlaneWaveMode mode;
  mode.omega = branch * energy;
  const int n = spec.order();
  if (energy == 0.0) {
    mode.spinor = ComplexVector::Zero(n);
    mode.spinor(0) = 1.0;
    return mode;
  }

  // (H + omega)/(2 omega) projects onto the omega eigenspace; take the
  // largest projected basis vector, normalized with a real-positive pivot.
  const ComplexMatrix h = spec.hamiltonian(k);
  const ComplexMatrix proj = (h + mode.omega * identity_matrix(n)) / (2.0 * mode.omega);
  int best = 0;
  double best_norm = -1.0;
  for (int j = 0; j < n; ++j) {
    const double nn = proj.col(j).norm();
    if (nn > best_norm + 1e-14) {
      best_norm = nn;
      best = j;
    }
  }
  ComplexVector v = proj.col(best);
  v /= v.norm();
  int pivot = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(v(i)) > std::abs(v(pivot)) + 1e-14) pivot = i;
  const cplx piv = v(pivot);
  v *= std::conj(piv) / std::abs(piv);
  mode.spinor = v;
  return mode;
}

DiagnosticsSeries free_run_with_monitors(SpinorField& psi, const DiracHamiltonianSpec& spec,
                                         const DescentDecomposition* decomp, double duration, double dt) {
  const int nsteps = step_count(duration, dt);
  const FreeDiracPropagator prop(psi.grid, spec, dt);

  DiagnosticsSeries series;
  auto record = [&](double t) {
    series.append("charge", t, total_charge(psi));
    if (decomp) {
      series.append("kappa3_charge", t, kappa3_charge(psi, *decomp));
      series.append("sector_plus_norm", t, sector_norm(psi, decomp->p_plus));
      series.append("sector_minus_norm", t, sector_norm(psi, decomp->p_minus));
    }
  };
  record(0.0);
  for (int n = 1; n <= nsteps; ++n) {
    prop.apply(psi);
    record(n * dt);
  }
  return series;
}

double z_variation(const SpinorField& psi3d) {
  const Grid& g = psi3d.grid;
  if (g.dim != 3) throw std::invalid_argument("z_variation: 3D field required");
  double var = 0.0;
  const long slice = static_cast<long>(g.points[0]) * g.points[1];
  for (int c = 0; c < psi3d.components; ++c)
    for (int iz = 1; iz < g.points[2]; ++iz)
      for (long p = 0; p < slice; ++p)
        var = std::max(var, std::abs(psi3d.at(c, p + slice * iz) - psi3d.at(c, p)));
  return var;
}

DescentEquivalenceReport descent_equivalence_experiment(const SpinorField& initial3d,
                                                        const DescentDecomposition& decomp, double duration,
                                                        double dt) {
  if (initial3d.grid.dim != 3 || initial3d.components != 4)
    throw std::invalid_argument("descent equivalence: 4-component field on a 3D grid required");
  if (z_variation(initial3d) > 1e-12)
    throw std::invalid_argument("descent equivalence: initial data not z-independent");

  const int nsteps = step_count(duration, dt);
  const Grid& g3 = initial3d.grid;
  const Grid g2 = Grid::make_2d(g3.points[0], g3.points[1], g3.lengths[0], g3.lengths[1]);

  // (a) full 3+1 evolution with sector monitors
  SpinorField psi3 = initial3d;
  const DiracHamiltonianSpec spec3{decomp.parent, initial3d.mass};
  DescentEquivalenceReport report;
  report.diagnostics = free_run_with_monitors(psi3, spec3, &decomp, duration, dt);

  // (b) the two independent 2+1 evolutions of the sector fields
  SpinorField plus = SpinorField::zeros(g2, 2, initial3d.mass);
  SpinorField minus = SpinorField::zeros(g2, 2, initial3d.mass);
  for (long p = 0; p < g2.total_points(); ++p) {
    Eigen::Vector4cd phi;
    for (int c = 0; c < 4; ++c) phi(c) = initial3d.at(c, p);  // z = 0 plane
    const auto [vp, vm] = split_spinor(phi, decomp);
    plus.at(0, p) = vp(0);
    plus.at(1, p) = vp(1);
    minus.at(0, p) = vm(0);
    minus.at(1, p) = vm(1);
  }
  const FreeDiracPropagator prop_plus(g2, {decomp.sub_plus, initial3d.mass}, dt);
  const FreeDiracPropagator prop_minus(g2, {decomp.sub_minus, initial3d.mass}, dt);
  for (int n = 0; n < nsteps; ++n) {
    prop_plus.apply(plus);
    prop_minus.apply(minus);
  }

  // compare the recombined pair against every z-slice of the full run
  for (long p = 0; p < g2.total_points(); ++p) {
    Eigen::Vector2cd vp, vm;
    vp << plus.at(0, p), plus.at(1, p);
    vm << minus.at(0, p), minus.at(1, p);
    const Eigen::Vector4cd merged = merge_spinor(vp, vm, decomp);
    for (int iz = 0; iz < g3.points[2]; ++iz) {
      const long q = p + g2.total_points() * iz;
      for (int c = 0; c < 4; ++c)
        report.max_deviation = std::max(report.max_deviation, std::abs(psi3.at(c, q) - merged(c)));
    }
  }

  report.leakage = report.diagnostics.max_abs("sector_minus_norm");
  report.charge_drift = report.diagnostics.drift("charge");
  report.kappa3_drift = report.diagnostics.drift("kappa3_charge");
  return report;
}

nlohmann::json DescentEquivalenceReport::to_json() const {
  nlohmann::json j;
  j["max_deviation"] = max_deviation;
  j["leakage"] = leakage;
  j["charge_drift"] = charge_drift;
  j["kappa3_drift"] = kappa3_drift;
  return j;
}

ChiralityReport chirality_split_experiment(const SpinorField& initial, const GammaRepresentation& rep,
                                           double duration, double dt) {
  if (initial.mass != 0.0) throw std::invalid_argument("chirality split: massless field required");
  if (initial.components != 4) throw std::invalid_argument("chirality split: 4-component field required");

  const ComplexMatrix g5 = gamma5(rep);
  const ComplexMatrix proj_right = 0.5 * (identity_matrix(4) + g5);
  const ComplexMatrix proj_left = 0.5 * (identity_matrix(4) - g5);

  SpinorField psi = initial;
  const double right0 = sector_norm(psi, proj_right);
  const double left0 = sector_norm(psi, proj_left);

  ChiralityReport report;
  if (right0 == 0.0 && left0 == 0.0) return report;  // zero field, trivially preserved
  const bool home_is_right = right0 >= left0;
  if (std::min(right0, left0) > 1e-12 * std::max(right0, left0))
    throw std::invalid_argument("chirality split: initial data not in a gamma5 eigenspace");
  const ComplexMatrix& opposite = home_is_right ? proj_left : proj_right;

  const int nsteps = step_count(duration, dt);
  const FreeDiracPropagator prop(psi.grid, {rep, 0.0}, dt);
  auto record = [&](double t) {
    const double off = sector_norm(psi, opposite);
    report.diagnostics.append("charge", t, total_charge(psi));
    report.diagnostics.append("opposite_chirality_norm", t, off);
    report.opposite_norm_max = std::max(report.opposite_norm_max, off);
  };
  record(0.0);
  for (int n = 1; n <= nsteps; ++n) {
    prop.apply(psi);
    record(n * dt);
  }
  report.charge_drift = report.diagnostics.drift("charge");
  return report;
}

}  // namespace descent
