#include "cgwave/strip.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cgwave/errors.hpp"
#include "cgwave/kernels.hpp"

namespace cgwave {

StripParams::StripParams(double d) : d_(d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument("StripParams: depth must be positive, got " + std::to_string(d));
  }
}

namespace {

// 1 - exp(-2nd), accurate for small nd.
double one_minus_exp(int n, double d) { return -std::expm1(-2.0 * n * d); }

}  // namespace

double sinh_ratio(int n, double y, double d) {
  if (n == 0) return 1.0 + y / d;
  return std::exp(n * y) * (-std::expm1(-2.0 * n * (y + d))) / one_minus_exp(n, d);
}

double cosh_ratio(int n, double y, double d) {
  return std::exp(n * y) * (1.0 + std::exp(-2.0 * n * (y + d))) / one_minus_exp(n, d);
}

double coth_mode(int n, double d) {
  return (1.0 + std::exp(-2.0 * n * d)) / one_minus_exp(n, d);
}

StripGridField::StripGridField(int mx, int my, double d)
    : mx_(mx), my_(my), d_(d), values_(static_cast<std::size_t>(mx) * (my + 1), 0.0) {
  if (mx < 1 || my < 2) throw std::invalid_argument("StripGridField: need mx >= 1 and my >= 2");
}

double StripGridField::x(int j) const { return 2.0 * std::numbers::pi * j / mx_; }
double StripGridField::y(int m) const { return m == my_ ? 0.0 : -d_ + d_ * m / my_; }
double StripGridField::dx() const { return 2.0 * std::numbers::pi / mx_; }
double StripGridField::dy() const { return d_ / my_; }

double StripGridField::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

StripHarmonic::StripHarmonic(const PeriodicFunction& boundary, StripParams strip, Kind kind)
    : kind_(kind), d_(strip.d()), a_(boundary.modes() + 1), b_(boundary.modes() + 1, 0.0) {
  for (int n = 0; n <= boundary.modes(); ++n) {
    a_[n] = boundary.a(n);
    b_[n] = boundary.b(n);
  }
  if (kind_ == Kind::conjugate) a_[0] = 0.0;
}

namespace {

struct ModalWeights {
  double c;  // multiplies cos(nx)
  double s;  // multiplies sin(nx)
};

ModalWeights modal(StripHarmonic::Kind kind, StripHarmonic::Component comp, int n,
                   double y, double d, double a, double b) {
  using K = StripHarmonic::Kind;
  using C = StripHarmonic::Component;
  if (kind == K::extension) {
    switch (comp) {
      case C::value: {
        const double r = sinh_ratio(n, y, d);
        return {r * a, r * b};
      }
      case C::dx: {
        const double r = n * sinh_ratio(n, y, d);
        return {r * b, -r * a};
      }
      case C::dy: {
        const double r = n * cosh_ratio(n, y, d);
        return {r * a, r * b};
      }
    }
  }
  switch (comp) {
    case C::value: {
      const double r = cosh_ratio(n, y, d);
      return {-r * b, r * a};
    }
    case C::dx: {
      const double r = n * cosh_ratio(n, y, d);
      return {r * a, r * b};
    }
    case C::dy: {
      const double r = n * sinh_ratio(n, y, d);
      return {-r * b, r * a};
    }
  }
  return {0.0, 0.0};
}

double mean_part(StripHarmonic::Kind kind, StripHarmonic::Component comp, double a0,
                 double y, double d) {
  if (kind == StripHarmonic::Kind::conjugate) return 0.0;
  switch (comp) {
    case StripHarmonic::Component::value:
      return a0 * (1.0 + y / d);
    case StripHarmonic::Component::dx:
      return 0.0;
    case StripHarmonic::Component::dy:
      return a0 / d;
  }
  return 0.0;
}

}  // namespace

double StripHarmonic::eval(double x, double y, Component c) const {
  double acc = mean_part(kind_, c, a_[0], y, d_);
  for (int n = 1; n <= modes(); ++n) {
    if (a_[n] == 0.0 && b_[n] == 0.0) continue;
    const ModalWeights w = modal(kind_, c, n, y, d_, a_[n], b_[n]);
    acc += w.c * std::cos(n * x) + w.s * std::sin(n * x);
  }
  return acc;
}

StripGridField StripHarmonic::sample(int mx, int my, Component c) const {
  StripGridField field(mx, my, d_);
  const int n_modes = modes();
  std::vector<double> cos_table(static_cast<std::size_t>(n_modes + 1) * mx);
  std::vector<double> sin_table(static_cast<std::size_t>(n_modes + 1) * mx);
  for (int n = 1; n <= n_modes; ++n) {
    for (int j = 0; j < mx; ++j) {
      cos_table[static_cast<std::size_t>(n) * mx + j] = std::cos(n * field.x(j));
      sin_table[static_cast<std::size_t>(n) * mx + j] = std::sin(n * field.x(j));
    }
  }
  const auto& k = kernels::active();
  for (int m = 0; m <= my; ++m) {
    const double y = field.y(m);
    auto row = field.row(m);
    std::fill(row.begin(), row.end(), mean_part(kind_, c, a_[0], y, d_));
    for (int n = 1; n <= n_modes; ++n) {
      if (a_[n] == 0.0 && b_[n] == 0.0) continue;
      const ModalWeights w = modal(kind_, c, n, y, d_, a_[n], b_[n]);
      k.axpy(w.c, cos_table.data() + static_cast<std::size_t>(n) * mx, row.data(), mx);
      k.axpy(w.s, sin_table.data() + static_cast<std::size_t>(n) * mx, row.data(), mx);
    }
  }
  return field;
}

PeriodicFunction hilbert_strip(const PeriodicFunction& f, StripParams strip) {
  const double scale = std::max(1.0, f.coefficient_sup());
  if (std::abs(f.mean()) > 1e-12 * scale) {
    throw MeanNotZero("hilbert_strip: argument has nonzero mean " + std::to_string(f.mean()),
                      f.mean());
  }
  const int n_modes = f.modes();
  std::vector<double> a(n_modes + 1, 0.0);
  std::vector<double> b(n_modes, 0.0);
  for (int n = 1; n <= n_modes; ++n) {
    const double c = coth_mode(n, strip.d());
    a[n] = -f.b(n) * c;
    b[n - 1] = f.a(n) * c;
  }
  return {std::move(a), std::move(b), f.grid_size()};
}

PeriodicFunction dirichlet_neumann(const PeriodicFunction& f, StripParams strip) {
  return hilbert_strip(derivative(f), strip) + f.mean() / strip.d();
}

StripGridField harmonic_extension(const PeriodicFunction& boundary, StripParams d, int my) {
  return StripHarmonic(boundary, d, StripHarmonic::Kind::extension).sample(boundary.grid_size(), my);
}

StripGridField conjugate_extension(const PeriodicFunction& boundary, StripParams d, int my) {
  return StripHarmonic(boundary, d, StripHarmonic::Kind::conjugate).sample(boundary.grid_size(), my);
}

double cauchy_riemann_defect(const StripHarmonic& w, const StripHarmonic& z, int mx, int my) {
  using C = StripHarmonic::Component;
  const StripGridField wx = w.sample(mx, my, C::dx);
  const StripGridField wy = w.sample(mx, my, C::dy);
  const StripGridField zx = z.sample(mx, my, C::dx);
  const StripGridField zy = z.sample(mx, my, C::dy);
  double defect = 0.0;
  for (int m = 1; m < my; ++m) {
    for (int j = 0; j < mx; ++j) {
      defect = std::max(defect, std::abs(zx.at(m, j) - wy.at(m, j)));
      defect = std::max(defect, std::abs(zy.at(m, j) + wx.at(m, j)));
    }
  }
  return defect;
}

}  // namespace cgwave
