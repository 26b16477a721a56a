#pragma once

// Operators attached to the periodic strip R_d = {(x, y) : -d < y < 0}:
// harmonic extension, its harmonic conjugate, the periodic Hilbert transform
// C_d and the Dirichlet-Neumann map G_d. All act as exact Fourier multipliers.

#include <span>
#include <vector>

#include "cgwave/periodic_function.hpp"

namespace cgwave {

/// Depth of the strip (dimensionless; d = k h in the wave problem).
class StripParams {
 public:
  explicit StripParams(double d);
  double d() const noexcept { return d_; }

 private:
  double d_;
};

/// sinh(n(y+d))/sinh(nd), cosh(n(y+d))/sinh(nd) and coth(nd), evaluated in
/// exponentially scaled form so they never overflow. Valid for -d <= y <= 0.
double sinh_ratio(int n, double y, double d);
double cosh_ratio(int n, double y, double d);
double coth_mode(int n, double d);

/// Real field on the tensor grid x_j = 2*pi*j/Mx (j < Mx) times
/// y_m = -d + d*m/My (m = 0..My). Row-major: one row per y level.
class StripGridField {
 public:
  StripGridField(int mx, int my, double d);

  int mx() const noexcept { return mx_; }
  int my() const noexcept { return my_; }
  int rows() const noexcept { return my_ + 1; }
  double d() const noexcept { return d_; }
  double x(int j) const;
  double y(int m) const;
  double dx() const;
  double dy() const;

  double& at(int m, int j) { return values_[static_cast<std::size_t>(m) * mx_ + j]; }
  double at(int m, int j) const { return values_[static_cast<std::size_t>(m) * mx_ + j]; }
  std::span<double> row(int m) { return {values_.data() + static_cast<std::size_t>(m) * mx_, static_cast<std::size_t>(mx_)}; }
  std::span<const double> row(int m) const { return {values_.data() + static_cast<std::size_t>(m) * mx_, static_cast<std::size_t>(mx_)}; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double sup_norm() const;

 private:
  int mx_;
  int my_;
  double d_;
  std::vector<double> values_;
};

/// Spectral representation of a harmonic function on R_d built from boundary
/// data f = a_0 + sum a_n cos + b_n sin on y = 0.
///   extension:  W = a_0 (1 + y/d) + sum S_n(y) (a_n cos nx + b_n sin nx), W(x,-d) = 0
///   conjugate:  Z = sum C_n(y) (a_n sin nx - b_n cos nx), Z_x = W_y, Z_y = -W_x
/// with S_n = sinh(n(y+d))/sinh(nd), C_n = cosh(n(y+d))/sinh(nd). The mean mode
/// of the conjugate (an x-linear term) is left to the caller.
class StripHarmonic {
 public:
  enum class Kind { extension, conjugate };
  enum class Component { value, dx, dy };

  StripHarmonic(const PeriodicFunction& boundary, StripParams strip, Kind kind);

  Kind kind() const noexcept { return kind_; }
  double d() const noexcept { return d_; }
  int modes() const noexcept { return static_cast<int>(a_.size()) - 1; }

  double value(double x, double y) const { return eval(x, y, Component::value); }
  double dx(double x, double y) const { return eval(x, y, Component::dx); }
  double dy(double x, double y) const { return eval(x, y, Component::dy); }
  double eval(double x, double y, Component c) const;

  /// Samples on an mx-by-(my+1) grid.
  StripGridField sample(int mx, int my, Component c = Component::value) const;

 private:
  Kind kind_;
  double d_;
  std::vector<double> a_;
  std::vector<double> b_;  // b_0 unused
};

/// C_d(f) = sum a_n coth(nd) sin nx - b_n coth(nd) cos nx. Throws MeanNotZero
/// when |mean(f)| exceeds 1e-12 of the largest coefficient (floor 1e-12).
PeriodicFunction hilbert_strip(const PeriodicFunction& f, StripParams d);

/// G_d(f) = [f]/d + C_d(f').
PeriodicFunction dirichlet_neumann(const PeriodicFunction& f, StripParams d);

/// W on the grid of `boundary` (Mx = boundary.grid_size()) with my+1 rows.
StripGridField harmonic_extension(const PeriodicFunction& boundary, StripParams d, int my);

/// Harmonic conjugate of the oscillatory part of `boundary`; its trace at y = 0
/// is hilbert_strip of the zero-mean part.
StripGridField conjugate_extension(const PeriodicFunction& boundary, StripParams d, int my);

/// Sup norm over interior nodes of the Cauchy-Riemann residuals
/// |Z_x - W_y| and |Z_y + W_x| evaluated from spectral derivatives.
double cauchy_riemann_defect(const StripHarmonic& w, const StripHarmonic& z, int mx, int my);

}  // namespace cgwave
