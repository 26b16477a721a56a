#pragma once

#include <span>
#include <vector>

namespace cgwave {

enum class Parity { even, general };

/// How `analyze` decides the parity tag of its result.
enum class ParityMode {
  detect,         ///< tag even when the sine part is below 1e-12 of the largest coefficient
  force_general,  ///< keep the sine part whatever its size
  force_even      ///< project onto cosines
};

/// A real 2*pi-periodic trigonometric polynomial
///   f(x) = a_0 + sum_{n=1..N} a_n cos(nx) + b_n sin(nx)
/// together with its samples on the uniform grid x_j = 2*pi*j/M, M >= 2N+2.
/// Even functions carry no sine storage at all. Values are immutable.
class PeriodicFunction {
 public:
  PeriodicFunction() : PeriodicFunction(std::vector<double>{0.0}, {}) {}

  /// `sin_coeffs` holds b_1..b_N; pass it empty for an even function.
  /// `grid` = 0 selects the default grid of max(4N, 2N+2) points.
  PeriodicFunction(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                   int grid = 0);

  static PeriodicFunction constant(double c, int modes, int grid = 0);
  static PeriodicFunction cosine(int n, double amplitude, int modes, int grid = 0);
  static PeriodicFunction sine(int n, double amplitude, int modes, int grid = 0);
  static PeriodicFunction zero(int modes, int grid = 0) { return constant(0.0, modes, grid); }

  int modes() const noexcept { return static_cast<int>(cos_.size()) - 1; }
  int grid_size() const noexcept { return static_cast<int>(samples_.size()); }
  Parity parity() const noexcept { return sin_.empty() ? Parity::even : Parity::general; }

  std::span<const double> cos_coeffs() const noexcept { return cos_; }
  /// b_1..b_N, empty for even functions.
  std::span<const double> sin_coeffs() const noexcept { return sin_; }
  std::span<const double> grid_samples() const noexcept { return samples_; }

  double a(int n) const { return n <= modes() ? cos_[n] : 0.0; }
  double b(int n) const;
  double mean() const noexcept { return cos_[0]; }

  /// Point evaluation at arbitrary x.
  double operator()(double x) const;
  /// Samples on a uniform grid with `m` points (any m >= 1).
  std::vector<double> sample(int m) const;

  /// Largest |coefficient| over all modes, including the mean.
  double coefficient_sup() const;
  /// Largest |sample| on the carried grid.
  double sup_norm() const;
  /// Energy in the upper half of the modes relative to all oscillatory energy.
  double tail_energy_fraction() const;

  PeriodicFunction truncated(int modes) const;
  PeriodicFunction on_grid(int grid) const;
  PeriodicFunction with_mean(double mean) const;

  friend PeriodicFunction operator+(const PeriodicFunction& f, const PeriodicFunction& g);
  friend PeriodicFunction operator-(const PeriodicFunction& f, const PeriodicFunction& g);
  friend PeriodicFunction operator*(double c, const PeriodicFunction& f);
  PeriodicFunction operator+(double c) const { return with_mean(mean() + c); }

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::vector<double> samples_;
};

/// Default collocation grid for N modes: max(4N, 2N+2).
int default_grid(int modes);

/// Trigonometric interpolant of samples on x_j = 2*pi*j/M. `modes` = -1 keeps
/// the largest N with M >= 2N+2. Throws InvalidSamples on non-finite input or
/// M < 2.
PeriodicFunction analyze(std::span<const double> samples, int modes = -1,
                         ParityMode parity = ParityMode::detect);

/// d/dx, with d/dx cos(nx) = -n sin(nx).
PeriodicFunction derivative(const PeriodicFunction& f);

/// Mean of the pointwise product over one period (exact for the carried grid).
double period_average(std::span<const double> samples);

}  // namespace cgwave
