#include "descent/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "descent/fft.hpp"
#include "descent/observables.hpp"

namespace descent {

namespace {

double minimum_image(double delta, double length) {
  return delta - length * std::round(delta / length);
}

// Periodized 1D Gaussian factor (image sum): smooth across the wrap, so the
// spectrum carries no cut-locus tail.
double periodic_gaussian(double delta, double length, double width) {
  const double d = minimum_image(delta, length);
  double sum = 0.0;
  for (int n = -2; n <= 2; ++n) {
    const double s = (d + n * length) / width;
    sum += std::exp(-0.5 * s * s);
  }
  return sum;
}

// Gaussian envelope times the plane-wave phase at one grid point.
cplx packet_amplitude(const Grid& g, const PacketSpec& p, int ix, int iy, int iz) {
  const std::array<double, 3> x{ix * g.spacing(0), iy * g.spacing(1),
                                g.dim == 3 ? iz * g.spacing(2) : 0.0};
  double envelope = 1.0, phase = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    envelope *= periodic_gaussian(x[static_cast<std::size_t>(a)] - p.center[static_cast<std::size_t>(a)],
                                  g.lengths[static_cast<std::size_t>(a)], p.width);
    phase += p.momentum[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
  }
  return envelope * std::exp(cplx(0.0, phase));
}

SpinorField envelope_times_spinor(const Grid& g, const PacketSpec& p, const Eigen::Vector4cd& u,
                                  double mass, double charge) {
  SpinorField psi = SpinorField::zeros(g, 4, mass, charge);
  for (int iz = 0; iz < g.points[2]; ++iz)
    for (int iy = 0; iy < g.points[1]; ++iy)
      for (int ix = 0; ix < g.points[0]; ++ix) {
        const cplx amp = packet_amplitude(g, p, ix, iy, iz);
        const long idx = g.index(ix, iy, iz);
        for (int c = 0; c < 4; ++c) psi.at(c, idx) = amp * u(c);
      }
  normalize_total_charge(psi);
  return psi;
}

}  // namespace

SpinorField make_sector_packet(const Grid& grid, const DescentDecomposition& decomp,
                               const PacketSpec& packet, SectorChoice sector, double mass, double charge) {
  Eigen::Vector4cd hat = Eigen::Vector4cd::Zero();
  switch (sector) {
    case SectorChoice::Plus:
      hat(0) = 1.0;
      break;
    case SectorChoice::Minus:
      hat(2) = 1.0;
      break;
    case SectorChoice::Both:
      hat(0) = hat(2) = 1.0 / std::sqrt(2.0);
      break;
  }
  const Eigen::Vector4cd u = decomp.u_block.adjoint() * hat;
  return envelope_times_spinor(grid, packet, u, mass, charge);
}

SpinorField make_chiral_packet(const Grid& grid, const GammaRepresentation& rep, const PacketSpec& packet,
                               int chirality) {
  if (chirality != 1 && chirality != -1)
    throw std::invalid_argument("make_chiral_packet: chirality must be +1 or -1");
  const ComplexMatrix proj = 0.5 * (identity_matrix(4) + static_cast<double>(chirality) * gamma5(rep));
  Eigen::Vector4cd u = Eigen::Vector4cd::Zero();
  for (int j = 0; j < 4 && u.norm() < 0.1; ++j) {
    Eigen::Vector4cd e = Eigen::Vector4cd::Zero();
    e(j) = 1.0;
    u = proj * e;
  }
  u /= u.norm();
  return envelope_times_spinor(grid, packet, u, 0.0, 0.0);
}

SpinorField replicate_along_z(const SpinorField& psi2d, int nz, double lz) {
  if (psi2d.grid.dim != 2) throw std::invalid_argument("replicate_along_z: 2D field required");
  const Grid g3 = Grid::make_3d(psi2d.grid.points[0], psi2d.grid.points[1], nz, psi2d.grid.lengths[0],
                                psi2d.grid.lengths[1], lz);
  SpinorField out = SpinorField::zeros(g3, psi2d.components, psi2d.mass, psi2d.charge);
  const long slice = psi2d.grid.total_points();
  for (int c = 0; c < psi2d.components; ++c)
    for (int iz = 0; iz < nz; ++iz)
      for (long p = 0; p < slice; ++p) out.at(c, p + slice * iz) = psi2d.at(c, p);
  return out;
}

RealField make_gaussian_field(const Grid& grid, const std::array<double, 3>& center, double width,
                              double amplitude) {
  RealField f = RealField::zeros(grid);
  for (int iz = 0; iz < grid.points[2]; ++iz)
    for (int iy = 0; iy < grid.points[1]; ++iy)
      for (int ix = 0; ix < grid.points[0]; ++ix) {
        const std::array<double, 3> x{ix * grid.spacing(0), iy * grid.spacing(1),
                                      grid.dim == 3 ? iz * grid.spacing(2) : 0.0};
        double envelope = 1.0;
        for (int a = 0; a < grid.dim; ++a)
          envelope *= periodic_gaussian(x[static_cast<std::size_t>(a)] - center[static_cast<std::size_t>(a)],
                                        grid.lengths[static_cast<std::size_t>(a)], width);
        f[grid.index(ix, iy, iz)] = amplitude * envelope;
      }
  return f;
}

GaugeFieldState make_eeb_initial(const Grid& grid, const std::array<double, 3>& center, double width,
                                 double amplitude) {
  GaugeFieldState s = GaugeFieldState::fields_on(grid);
  // transverse electric field from a stream function keeps div E = 0
  const RealField stream = make_gaussian_field(grid, center, width, amplitude);
  s.electric[0] = spectral_derivative(stream, 1);
  s.electric[1] = spectral_derivative(stream, 0);
  for (long p = 0; p < grid.total_points(); ++p) s.electric[1][p] = -s.electric[1][p];
  std::array<double, 3> shifted = center;
  shifted[0] += 0.25 * grid.lengths[0];
  s.magnetic[2] = make_gaussian_field(grid, shifted, width, amplitude);
  return s;
}

GaugeFieldState make_bbe_initial(const Grid& grid, const std::array<double, 3>& center, double width,
                                 double amplitude) {
  GaugeFieldState s = GaugeFieldState::fields_on(grid);
  // B_x, B_y from a z-potential keep div B = 0 for z-independent data
  const RealField a3 = make_gaussian_field(grid, center, width, amplitude);
  s.magnetic[0] = spectral_derivative(a3, 1);
  s.magnetic[1] = spectral_derivative(a3, 0);
  for (long p = 0; p < grid.total_points(); ++p) s.magnetic[1][p] = -s.magnetic[1][p];
  std::array<double, 3> shifted = center;
  shifted[1] += 0.25 * grid.lengths[1];
  s.electric[2] = make_gaussian_field(grid, shifted, width, amplitude);
  return s;
}

GaugeFieldState replicate_fields_along_z(const GaugeFieldState& state2d, int nz, double lz) {
  if (state2d.grid.dim != 2 || state2d.form != GaugeFieldState::Form::Fields)
    throw std::invalid_argument("replicate_fields_along_z: 2D field-form state required");
  const Grid g3 = Grid::make_3d(state2d.grid.points[0], state2d.grid.points[1], nz,
                                state2d.grid.lengths[0], state2d.grid.lengths[1], lz);
  GaugeFieldState out = GaugeFieldState::fields_on(g3);
  out.time = state2d.time;
  const long slice = state2d.grid.total_points();
  for (int c = 0; c < 3; ++c)
    for (int iz = 0; iz < nz; ++iz)
      for (long p = 0; p < slice; ++p) {
        out.electric[static_cast<std::size_t>(c)][p + slice * iz] = state2d.electric[static_cast<std::size_t>(c)][p];
        out.magnetic[static_cast<std::size_t>(c)][p + slice * iz] = state2d.magnetic[static_cast<std::size_t>(c)][p];
      }
  return out;
}

}  // namespace descent
