#include "cgwave/bifurcation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cgwave/errors.hpp"

namespace cgwave {

double lambda_star(int n, double k, const PhysicalParams& p) {
  if (n < 1) throw std::invalid_argument("lambda_star: n must be >= 1");
  if (!(k > 0.0)) throw std::invalid_argument("lambda_star: k must be > 0");
  const double kn = k * n;
  return (p.sigma * kn + p.g / kn) * std::tanh(kn * p.h);
}

double rescaling_identity_check(int n, double k, const PhysicalParams& p) {
  return std::abs(lambda_star(1, n * k, p) - lambda_star(n, k, p));
}

double monotonicity_ratio(const PhysicalParams& p) {
  if (p.g == 0.0) return std::numeric_limits<double>::infinity();
  return p.sigma / (p.g * p.h * p.h);
}

bool monotonicity_condition(const PhysicalParams& p) {
  if (p.g == 0.0) return true;
  // sigma > g h^2 / 3 written without the division so the boundary is exact.
  return 3.0 * p.sigma > p.g * p.h * p.h;
}

KernelReport kernel_is_simple(double k, const PhysicalParams& p, int n_max, double tol) {
  p.validate();
  if (n_max < 2) throw std::invalid_argument("kernel_is_simple: n_max must be >= 2");
  if (!(k > 0.0)) throw std::invalid_argument("kernel_is_simple: k must be > 0");

  KernelReport r;
  r.k = k;
  r.scan_limit = n_max;
  r.tol = tol;
  r.lambda_star = lambda_star(1, k, p);
  r.sigma_over_gh2 = monotonicity_ratio(p);
  r.monotone_limit_case = p.g == 0.0;
  r.monotone_criterion = monotonicity_condition(p);
  r.criterion_indeterminate = p.g > 0.0 && 3.0 * p.sigma == p.g * p.h * p.h;
  r.capillary_constant =
      p.g == 0.0 ? std::numeric_limits<double>::infinity() : k * k * p.sigma / p.g;
  r.capillary_criterion = r.capillary_constant > 0.5;

  r.min_relative_gap = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= n_max; ++n) {
    const double gap = std::abs(lambda_star(n, k, p) - r.lambda_star) / r.lambda_star;
    if (gap < r.min_relative_gap) {
      r.min_relative_gap = gap;
      r.closest_mode = n;
    }
  }
  r.simple = r.min_relative_gap > tol;
  if (!r.simple) r.colliding_mode = r.closest_mode;
  return r;
}

double transversality_value(double k, const PhysicalParams& p) {
  if (p.g == 0.0 && p.sigma == 0.0) {
    throw DegenerateParameters("transversality_value: g and sigma both vanish");
  }
  if (!(k > 0.0)) throw std::invalid_argument("transversality_value: k must be > 0");
  return -std::numbers::pi * (p.sigma + p.g / (k * k));
}

FlowForceConstants params_from_lambda_mu(double lambda, double mu, const PhysicalParams& p) {
  return {p.h * (lambda + 0.5 * p.g * p.h), mu + 2.0 * p.g * p.h + lambda};
}

BifurcationConstants lambda_mu_from_params(double S0, double Q, const PhysicalParams& p) {
  const double lambda = S0 / p.h - 0.5 * p.g * p.h;
  return {lambda, Q - 2.0 * p.g * p.h - lambda};
}

std::vector<DispersionRow> dispersion_table(std::span<const double> k_grid,
                                            const PhysicalParams& p, int n_max, double tol) {
  std::vector<DispersionRow> rows;
  rows.reserve(k_grid.size());
  for (double k : k_grid) {
    if (!(k > 0.0)) throw std::invalid_argument("dispersion_table: wavenumbers must be > 0");
    const KernelReport kr = kernel_is_simple(k, p, n_max, tol);
    DispersionRow row;
    row.k = k;
    row.lambda_star = kr.lambda_star;
    row.S0 = params_from_lambda_mu(row.lambda_star, 0.0, p).S0;
    row.surface_speed = std::sqrt(row.lambda_star);
    row.sigma_over_gh2 = kr.sigma_over_gh2;
    row.capillary_constant = kr.capillary_constant;
    row.kernel_simple = kr.simple;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cgwave
