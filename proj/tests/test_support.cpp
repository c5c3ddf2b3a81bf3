#include "test_support.hpp"

#include <cmath>

namespace descent::test {

std::vector<cplx> naive_dft_3d(const std::vector<cplx>& data, int nx, int ny, int nz, int sign) {
  const double s = sign < 0 ? -1.0 : 1.0;
  std::vector<cplx> out(data.size(), cplx(0.0, 0.0));
  for (int kz = 0; kz < nz; ++kz)
    for (int ky = 0; ky < ny; ++ky)
      for (int kx = 0; kx < nx; ++kx) {
        cplx sum(0.0, 0.0);
        for (int iz = 0; iz < nz; ++iz)
          for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
              const double phase = 2.0 * M_PI *
                                   (static_cast<double>(kx) * ix / nx + static_cast<double>(ky) * iy / ny +
                                    static_cast<double>(kz) * iz / nz);
              sum += data[static_cast<std::size_t>(ix + nx * (iy + ny * iz))] *
                     std::exp(cplx(0.0, s * phase));
            }
        out[static_cast<std::size_t>(kx + nx * (ky + ny * kz))] = sum;
      }
  if (sign > 0)
    for (cplx& v : out) v /= static_cast<double>(nx) * ny * nz;
  return out;
}

}  // namespace descent::test
