#include "cgwave/periodic_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cgwave/errors.hpp"
#include "fft.hpp"

namespace cgwave {

int default_grid(int modes) { return std::max({4 * modes, 2 * modes + 2, 2}); }

PeriodicFunction::PeriodicFunction(std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs, int grid)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  if (cos_.empty()) throw std::invalid_argument("PeriodicFunction: no coefficients");
  const int n = modes();
  if (!sin_.empty()) {
    if (static_cast<int>(sin_.size()) != n) {
      throw std::invalid_argument("PeriodicFunction: sine/cosine length mismatch");
    }
    // A sine part that is identically zero is dropped: the function is even.
    if (std::all_of(sin_.begin(), sin_.end(), [](double v) { return v == 0.0; })) {
      sin_.clear();
    }
  }
  const int m = grid > 0 ? grid : default_grid(n);
  if (m < 2 * n + 2) throw std::invalid_argument("PeriodicFunction: grid must satisfy M >= 2N+2");
  samples_.resize(m);
  fft::inverse(cos_, sin_, samples_);
}

PeriodicFunction PeriodicFunction::constant(double c, int modes, int grid) {
  std::vector<double> a(modes + 1, 0.0);
  a[0] = c;
  return {std::move(a), {}, grid};
}

PeriodicFunction PeriodicFunction::cosine(int n, double amplitude, int modes, int grid) {
  if (n < 0 || n > modes) throw std::invalid_argument("cosine: mode out of range");
  std::vector<double> a(modes + 1, 0.0);
  a[n] = amplitude;
  return {std::move(a), {}, grid};
}

PeriodicFunction PeriodicFunction::sine(int n, double amplitude, int modes, int grid) {
  if (n < 1 || n > modes) throw std::invalid_argument("sine: mode out of range");
  std::vector<double> b(modes, 0.0);
  b[n - 1] = amplitude;
  return {std::vector<double>(modes + 1, 0.0), std::move(b), grid};
}

double PeriodicFunction::b(int n) const {
  if (n < 1 || sin_.empty() || n > modes()) return 0.0;
  return sin_[n - 1];
}

double PeriodicFunction::operator()(double x) const {
  double acc = cos_[0];
  for (int n = 1; n <= modes(); ++n) {
    acc += cos_[n] * std::cos(n * x);
    if (!sin_.empty()) acc += sin_[n - 1] * std::sin(n * x);
  }
  return acc;
}

std::vector<double> PeriodicFunction::sample(int m) const {
  if (m < 1) throw std::invalid_argument("sample: empty grid");
  std::vector<double> out(m);
  fft::inverse(cos_, sin_, out);
  return out;
}

double PeriodicFunction::coefficient_sup() const {
  double s = 0.0;
  for (double v : cos_) s = std::max(s, std::abs(v));
  for (double v : sin_) s = std::max(s, std::abs(v));
  return s;
}

double PeriodicFunction::sup_norm() const {
  double s = 0.0;
  for (double v : samples_) s = std::max(s, std::abs(v));
  return s;
}

double PeriodicFunction::tail_energy_fraction() const {
  const int n = modes();
  double total = 0.0;
  double tail = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double e = a(k) * a(k) + b(k) * b(k);
    total += e;
    if (2 * k > n) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

PeriodicFunction PeriodicFunction::truncated(int n) const {
  if (n < 0) throw std::invalid_argument("truncated: negative mode count");
  std::vector<double> a(n + 1, 0.0);
  std::vector<double> b;
  for (int k = 0; k <= std::min(n, modes()); ++k) a[k] = cos_[k];
  if (!sin_.empty()) {
    b.assign(n, 0.0);
    for (int k = 1; k <= std::min(n, modes()); ++k) b[k - 1] = sin_[k - 1];
  }
  const int grid = std::max(grid_size(), 2 * n + 2);
  return {std::move(a), std::move(b), grid};
}

PeriodicFunction PeriodicFunction::on_grid(int grid) const { return {cos_, sin_, grid}; }

PeriodicFunction PeriodicFunction::with_mean(double mean) const {
  std::vector<double> a = cos_;
  a[0] = mean;
  return {std::move(a), sin_, grid_size()};
}

namespace {

PeriodicFunction combine(const PeriodicFunction& f, const PeriodicFunction& g, double sign) {
  const int n = std::max(f.modes(), g.modes());
  std::vector<double> a(n + 1, 0.0);
  std::vector<double> b;
  for (int k = 0; k <= n; ++k) a[k] = f.a(k) + sign * g.a(k);
  if (f.parity() == Parity::general || g.parity() == Parity::general) {
    b.assign(n, 0.0);
    for (int k = 1; k <= n; ++k) b[k - 1] = f.b(k) + sign * g.b(k);
  }
  return {std::move(a), std::move(b), std::max({f.grid_size(), g.grid_size(), default_grid(n)})};
}

}  // namespace

PeriodicFunction operator+(const PeriodicFunction& f, const PeriodicFunction& g) {
  return combine(f, g, 1.0);
}

PeriodicFunction operator-(const PeriodicFunction& f, const PeriodicFunction& g) {
  return combine(f, g, -1.0);
}

PeriodicFunction operator*(double c, const PeriodicFunction& f) {
  std::vector<double> a(f.cos_.size());
  std::vector<double> b(f.sin_.size());
  std::transform(f.cos_.begin(), f.cos_.end(), a.begin(), [c](double v) { return c * v; });
  std::transform(f.sin_.begin(), f.sin_.end(), b.begin(), [c](double v) { return c * v; });
  return {std::move(a), std::move(b), f.grid_size()};
}

PeriodicFunction analyze(std::span<const double> samples, int modes, ParityMode parity) {
  const int m = static_cast<int>(samples.size());
  if (m < 2) throw InvalidSamples("analyze: need at least 2 samples");
  for (int j = 0; j < m; ++j) {
    if (!std::isfinite(samples[j])) {
      throw InvalidSamples("analyze: non-finite sample at node " + std::to_string(j));
    }
  }
  const int max_modes = (m - 2) / 2;
  const int n = modes < 0 ? max_modes : modes;
  if (n > max_modes) throw InvalidSamples("analyze: grid too coarse for requested modes");

  std::vector<double> a(n + 1);
  std::vector<double> b(n);
  fft::forward(samples, a, b);

  bool even = parity == ParityMode::force_even;
  if (parity == ParityMode::detect) {
    double scale = 0.0;
    double sine = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    for (double v : b) sine = std::max(sine, std::abs(v));
    scale = std::max(scale, sine);
    even = sine <= 1e-12 * scale;
  }
  if (even) b.clear();
  return {std::move(a), std::move(b), m};
}

PeriodicFunction derivative(const PeriodicFunction& f) {
  const int n = f.modes();
  std::vector<double> a(n + 1, 0.0);
  std::vector<double> b(n, 0.0);
  for (int k = 1; k <= n; ++k) {
    a[k] = k * f.b(k);
    b[k - 1] = -k * f.a(k);
  }
  return {std::move(a), std::move(b), f.grid_size()};
}

double period_average(std::span<const double> samples) {
  double acc = 0.0;
  for (double v : samples) acc += v;
  return acc / static_cast<double>(samples.size());
}

}  // namespace cgwave
