#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cgwave::fft {
namespace {

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex plan_mutex;

const Plans& plans_for(int m) {
  static std::map<int, Plans> cache;
  std::lock_guard lock(plan_mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<double> real(m);
  std::vector<std::complex<double>> spec(m / 2 + 1);
  auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
  Plans p;
  p.r2c = fftw_plan_dft_r2c_1d(m, real.data(), cplx, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.c2r = fftw_plan_dft_c2r_1d(m, cplx, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.r2c || !p.c2r) throw std::runtime_error("FFTW planning failed");
  return cache.emplace(m, p).first->second;
}

}  // namespace

void forward(std::span<const double> samples, std::span<double> a, std::span<double> b) {
  const int m = static_cast<int>(samples.size());
  const int n_modes = static_cast<int>(a.size()) - 1;
  if (2 * n_modes + 1 > m) throw std::invalid_argument("fft::forward: grid too coarse");
  const Plans& p = plans_for(m);
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> spec(m / 2 + 1);
  fftw_execute_dft_r2c(p.r2c, in.data(), reinterpret_cast<fftw_complex*>(spec.data()));
  const double inv = 1.0 / m;
  a[0] = spec[0].real() * inv;
  for (int n = 1; n <= n_modes; ++n) {
    a[n] = 2.0 * spec[n].real() * inv;
    b[n - 1] = -2.0 * spec[n].imag() * inv;
  }
}

void inverse(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const int m = static_cast<int>(out.size());
  const int n_modes = static_cast<int>(a.size()) - 1;
  const bool has_sin = !b.empty();
  if (2 * n_modes + 1 > m) {
    const double dx = 2.0 * std::numbers::pi / m;
    for (int j = 0; j < m; ++j) {
      double acc = a[0];
      for (int n = 1; n <= n_modes; ++n) {
        acc += a[n] * std::cos(n * j * dx);
        if (has_sin) acc += b[n - 1] * std::sin(n * j * dx);
      }
      out[j] = acc;
    }
    return;
  }
  const Plans& p = plans_for(m);
  std::vector<std::complex<double>> spec(m / 2 + 1, {0.0, 0.0});
  spec[0] = {a[0], 0.0};
  for (int n = 1; n <= n_modes; ++n) {
    spec[n] = {0.5 * a[n], has_sin ? -0.5 * b[n - 1] : 0.0};
  }
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(spec.data()), out.data());
}

}  // namespace cgwave::fft
