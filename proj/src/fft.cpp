#include "descent/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace descent {

namespace {

// Cached FFTW plans, created with FFTW_UNALIGNED so they can be executed on
// any buffer of the right shape.
class PlanCache {
 public:
  fftw_plan get(const Grid& grid, int components, int sign) {
    const Key key{grid.points[0], grid.points[1], grid.points[2], components, sign};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::vector<int> dims;
    if (grid.points[2] > 1) dims.push_back(grid.points[2]);
    if (grid.points[1] > 1) dims.push_back(grid.points[1]);
    dims.push_back(grid.points[0]);
    const int n = static_cast<int>(grid.total_points());

    scratch_.emplace_back(static_cast<std::size_t>(n) * static_cast<std::size_t>(components));
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(scratch_.back().data());
    fftw_plan plan = fftw_plan_many_dft(static_cast<int>(dims.size()), dims.data(), components, buf,
                                        nullptr, 1, n, buf, nullptr, 1, n, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fft: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  using Key = std::tuple<int, int, int, int, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
  std::vector<std::vector<cplx>> scratch_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void dft_inplace(const Grid& grid, cplx* data, int components, int sign) {
  fftw_plan plan = cache().get(grid, components, sign);
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, buf, buf);
  if (sign == FFTW_BACKWARD) {
    const double scale = 1.0 / static_cast<double>(grid.total_points());
    const std::size_t total = static_cast<std::size_t>(grid.total_points()) * static_cast<std::size_t>(components);
    for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
  }
}

SpinorField fft_forward(const SpinorField& f) {
  SpinorField out = f;
  dft_inplace(out.grid, out.values.data(), out.components, FFTW_FORWARD);
  return out;
}

SpinorField fft_inverse(const SpinorField& f) {
  SpinorField out = f;
  dft_inplace(out.grid, out.values.data(), out.components, FFTW_BACKWARD);
  return out;
}

namespace {

// Apply fn(kx, ky, kz, value) over the spectral representation of a real
// field and transform back, returning the real part.
template <typename Fn>
RealField spectral_map(const RealField& f, Fn&& fn) {
  const Grid& g = f.grid;
  std::vector<cplx> buf(f.values.begin(), f.values.end());
  dft_inplace(g, buf.data(), 1, FFTW_FORWARD);

  const std::vector<double> kx = g.wavenumbers(0);
  const std::vector<double> ky = g.wavenumbers(1);
  const std::vector<double> kz = g.dim == 3 ? g.wavenumbers(2) : std::vector<double>{0.0};
  std::array<int, 3> nyq{g.points[0] / 2, g.points[1] / 2, g.dim == 3 ? g.points[2] / 2 : -1};

  long idx = 0;
  for (int iz = 0; iz < g.points[2]; ++iz)
    for (int iy = 0; iy < g.points[1]; ++iy)
      for (int ix = 0; ix < g.points[0]; ++ix, ++idx)
        buf[static_cast<std::size_t>(idx)] =
            fn(kx[static_cast<std::size_t>(ix)], ky[static_cast<std::size_t>(iy)],
               kz[static_cast<std::size_t>(iz)], std::array<int, 3>{ix == nyq[0], iy == nyq[1], iz == nyq[2]},
               buf[static_cast<std::size_t>(idx)]);

  dft_inplace(g, buf.data(), 1, FFTW_BACKWARD);
  RealField out = RealField::zeros(g);
  for (long i = 0; i < g.total_points(); ++i) out[i] = buf[static_cast<std::size_t>(i)].real();
  return out;
}

}  // namespace

RealField spectral_derivative(const RealField& f, int axis) {
  if (axis < 0 || axis >= f.grid.dim) {
    if (axis == 2 && f.grid.dim == 2) {
      return RealField::zeros(f.grid);  // d/dz of a 2D field
    }
    throw std::invalid_argument("spectral_derivative: axis out of range");
  }
  return spectral_map(f, [axis](double kx, double ky, double kz, std::array<int, 3> nyquist, cplx v) {
    if (nyquist[static_cast<std::size_t>(axis)]) return cplx(0.0, 0.0);
    const double k = axis == 0 ? kx : (axis == 1 ? ky : kz);
    return cplx(0.0, 1.0) * k * v;
  });
}

RealField spectral_laplacian(const RealField& f) {
  // Nyquist components are dropped exactly as in spectral_derivative, so
  // div(lap A - grad div A) vanishes mode by mode.
  return spectral_map(f, [](double kx, double ky, double kz, std::array<int, 3> nyquist, cplx v) {
    const double ex = nyquist[0] ? 0.0 : kx;
    const double ey = nyquist[1] ? 0.0 : ky;
    const double ez = nyquist[2] ? 0.0 : kz;
    return -(ex * ex + ey * ey + ez * ez) * v;
  });
}

std::array<RealField, 3> spectral_curl(const std::array<RealField, 3>& v) {
  const Grid& g = v[0].grid;
  std::array<std::vector<cplx>, 3> hat;
  for (int c = 0; c < 3; ++c) {
    hat[static_cast<std::size_t>(c)].assign(v[static_cast<std::size_t>(c)].values.begin(),
                                            v[static_cast<std::size_t>(c)].values.end());
    dft_inplace(g, hat[static_cast<std::size_t>(c)].data(), 1, FFTW_FORWARD);
  }

  const std::vector<double> kx = g.wavenumbers(0);
  const std::vector<double> ky = g.wavenumbers(1);
  const std::vector<double> kz = g.dim == 3 ? g.wavenumbers(2) : std::vector<double>{0.0};
  const std::array<int, 3> nyq{g.points[0] / 2, g.points[1] / 2, g.dim == 3 ? g.points[2] / 2 : -1};
  const cplx im(0.0, 1.0);

  std::array<std::vector<cplx>, 3> out;
  for (auto& comp : out) comp.assign(static_cast<std::size_t>(g.total_points()), cplx(0.0, 0.0));

  long idx = 0;
  for (int iz = 0; iz < g.points[2]; ++iz)
    for (int iy = 0; iy < g.points[1]; ++iy)
      for (int ix = 0; ix < g.points[0]; ++ix, ++idx) {
        // differentiation wavenumbers, zeroed on the Nyquist planes
        const double dx = ix == nyq[0] ? 0.0 : kx[static_cast<std::size_t>(ix)];
        const double dy = iy == nyq[1] ? 0.0 : ky[static_cast<std::size_t>(iy)];
        const double dz = iz == nyq[2] ? 0.0 : kz[static_cast<std::size_t>(iz)];
        const std::size_t i = static_cast<std::size_t>(idx);
        const cplx vx = hat[0][i], vy = hat[1][i], vz = hat[2][i];
        out[0][i] = im * (dy * vz - dz * vy);
        out[1][i] = im * (dz * vx - dx * vz);
        out[2][i] = im * (dx * vy - dy * vx);
      }

  std::array<RealField, 3> result{RealField::zeros(g), RealField::zeros(g), RealField::zeros(g)};
  for (int c = 0; c < 3; ++c) {
    dft_inplace(g, out[static_cast<std::size_t>(c)].data(), 1, FFTW_BACKWARD);
    for (long i = 0; i < g.total_points(); ++i)
      result[static_cast<std::size_t>(c)][i] = out[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)].real();
  }
  return result;
}

RealField spectral_divergence(const std::array<RealField, 3>& v) {
  RealField out = spectral_derivative(v[0], 0);
  const RealField dy = spectral_derivative(v[1], 1);
  for (long i = 0; i < out.grid.total_points(); ++i) out[i] += dy[i];
  if (v[2].grid.dim == 3) {
    const RealField dz = spectral_derivative(v[2], 2);
    for (long i = 0; i < out.grid.total_points(); ++i) out[i] += dz[i];
  }
  return out;
}

std::array<RealField, 3> gauss_electric_field(const RealField& rho) {
  const Grid& g = rho.grid;
  std::vector<cplx> buf(rho.values.begin(), rho.values.end());
  dft_inplace(g, buf.data(), 1, FFTW_FORWARD);

  const std::vector<double> kx = g.wavenumbers(0);
  const std::vector<double> ky = g.wavenumbers(1);
  const std::vector<double> kz = g.dim == 3 ? g.wavenumbers(2) : std::vector<double>{0.0};
  const std::array<int, 3> nyq{g.points[0] / 2, g.points[1] / 2, g.dim == 3 ? g.points[2] / 2 : -1};

  std::array<std::vector<cplx>, 3> e;
  for (auto& comp : e) comp.assign(static_cast<std::size_t>(g.total_points()), cplx(0.0, 0.0));

  long idx = 0;
  for (int iz = 0; iz < g.points[2]; ++iz)
    for (int iy = 0; iy < g.points[1]; ++iy)
      for (int ix = 0; ix < g.points[0]; ++ix, ++idx) {
        // differentiation wavenumbers, same convention as spectral_derivative
        const std::array<double, 3> k{ix == nyq[0] ? 0.0 : kx[static_cast<std::size_t>(ix)],
                                      iy == nyq[1] ? 0.0 : ky[static_cast<std::size_t>(iy)],
                                      iz == nyq[2] ? 0.0 : kz[static_cast<std::size_t>(iz)]};
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (k2 == 0.0) continue;  // mean (neutralizing background) and pure-Nyquist modes
        const cplx phi = buf[static_cast<std::size_t>(idx)] / k2;
        for (int a = 0; a < 3; ++a)
          e[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx)] = cplx(0.0, -1.0) * k[static_cast<std::size_t>(a)] * phi;
      }

  std::array<RealField, 3> out{RealField::zeros(g), RealField::zeros(g), RealField::zeros(g)};
  for (int a = 0; a < 3; ++a) {
    dft_inplace(g, e[static_cast<std::size_t>(a)].data(), 1, FFTW_BACKWARD);
    for (long i = 0; i < g.total_points(); ++i)
      out[static_cast<std::size_t>(a)][i] = e[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].real();
  }
  return out;
}

}  // namespace descent
