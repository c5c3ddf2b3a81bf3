#pragma once

#include <array>

#include "descent/descent_algebra.hpp"
#include "descent/fields.hpp"

namespace descent {

// Gaussian wave packet parameters. Center and momentum are in box
// coordinates; momentum should sit on the wavenumber lattice so the phase is
// periodic (the scenario layer snaps it there).
struct PacketSpec {
  std::array<double, 3> center{};
  std::array<double, 3> momentum{};
  double width = 1.0;
};

enum class SectorChoice { Plus, Minus, Both };

// Normalized 4-component Gaussian packet living in range(P+), range(P-), or
// an equal-weight superposition.
SpinorField make_sector_packet(const Grid& grid, const DescentDecomposition& decomp,
                               const PacketSpec& packet, SectorChoice sector, double mass,
                               double charge = 0.0);

// Normalized massless packet in a gamma5 eigenspace (chirality +1 or -1).
SpinorField make_chiral_packet(const Grid& grid, const GammaRepresentation& rep, const PacketSpec& packet,
                               int chirality);

// Extrude a 2D field along z (z-independent by construction).
SpinorField replicate_along_z(const SpinorField& psi2d, int nz, double lz);

// Periodic Gaussian bump (minimum-image distance).
RealField make_gaussian_field(const Grid& grid, const std::array<double, 3>& center, double width,
                              double amplitude = 1.0);

// Source-free, divergence-consistent electromagnetic data populating only one
// sector: the transverse pair (E_x, E_y) and B_z, or (B_x, B_y) from a scalar
// potential plus E_z.
GaugeFieldState make_eeb_initial(const Grid& grid, const std::array<double, 3>& center, double width,
                                 double amplitude);
GaugeFieldState make_bbe_initial(const Grid& grid, const std::array<double, 3>& center, double width,
                                 double amplitude);

// Extrude 2D electromagnetic field data along z.
GaugeFieldState replicate_fields_along_z(const GaugeFieldState& state2d, int nz, double lz);

}  // namespace descent
