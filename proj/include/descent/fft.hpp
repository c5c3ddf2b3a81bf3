#pragma once

#include <array>

#include "descent/fields.hpp"
#include "descent/grid.hpp"

namespace descent {

// In-place complex DFT over each of `components` contiguous blocks.
// sign -1: forward (plain sum, unnormalized); sign +1: inverse (divides by N).
void dft_inplace(const Grid& grid, cplx* data, int components, int sign);

SpinorField fft_forward(const SpinorField& f);
SpinorField fft_inverse(const SpinorField& f);

// Spectral derivative of a real field along one axis. The Nyquist plane of
// that axis is zeroed (odd derivative of real data has no consistent sign
// there).
RealField spectral_derivative(const RealField& f, int axis);
RealField spectral_laplacian(const RealField& f);

// Curl and divergence of a 3-component real vector field; on a 2D grid all
// z-derivatives vanish identically.
std::array<RealField, 3> spectral_curl(const std::array<RealField, 3>& v);
RealField spectral_divergence(const std::array<RealField, 3>& v);

// Longitudinal electric field with div E = rho - mean(rho); the uniform
// background makes the periodic problem solvable.
std::array<RealField, 3> gauss_electric_field(const RealField& rho);

}  // namespace descent
