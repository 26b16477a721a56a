#pragma once

// Dispersion relation of the laminar flows, kernel simplicity, transversality
// and the affine change of constants (lambda, mu) <-> (S0, Q).

#include <optional>
#include <span>
#include <vector>

#include "cgwave/params.hpp"

namespace cgwave {

/// lambda*^n(k) = (sigma k n + g/(k n)) tanh(n k h).
double lambda_star(int n, double k, const PhysicalParams& p);

/// |lambda*^1(nk) - lambda*^n(k)|, zero up to roundoff.
double rescaling_identity_check(int n, double k, const PhysicalParams& p);

/// sigma / (g h^2); +infinity when g = 0.
double monotonicity_ratio(const PhysicalParams& p);

/// sigma / (g h^2) > 1/3. For g = 0 the dispersion curve sigma k tanh(kh) is
/// increasing and the condition is taken to hold.
bool monotonicity_condition(const PhysicalParams& p);

struct KernelReport {
  bool simple = true;
  std::optional<int> colliding_mode;  ///< set iff !simple; mode with the smallest gap
  double k = 0.0;
  double lambda_star = 0.0;           ///< lambda*^1(k)
  bool monotone_criterion = false;    ///< sigma/(g h^2) > 1/3
  bool monotone_limit_case = false;   ///< g = 0
  bool criterion_indeterminate = false;  ///< sigma/(g h^2) == 1/3 exactly
  double sigma_over_gh2 = 0.0;
  double capillary_constant = 0.0;    ///< C = k^2 sigma / g (+inf for g = 0)
  bool capillary_criterion = false;   ///< C > 1/2
  int scan_limit = 0;
  double tol = 0.0;
  int closest_mode = 0;               ///< argmin over n >= 2 of the relative gap
  double min_relative_gap = 0.0;      ///< |lambda*^n - lambda*^1| / lambda*^1 at closest_mode
};

/// Scans n = 2..n_max; the kernel is simple iff every relative gap
/// |lambda*^n - lambda*^1| / lambda*^1 exceeds tol.
KernelReport kernel_is_simple(double k, const PhysicalParams& p, int n_max = 1000,
                              double tol = 1e-10);

/// -pi (sigma + g/k^2). Throws DegenerateParameters when g = sigma = 0.
double transversality_value(double k, const PhysicalParams& p);

struct FlowForceConstants {
  double S0 = 0.0;  ///< flow force on the free surface
  double Q = 0.0;   ///< Bernoulli constant
};

/// S0 = h (lambda + g h / 2), Q = mu + 2 g h + lambda.
FlowForceConstants params_from_lambda_mu(double lambda, double mu, const PhysicalParams& p);

struct BifurcationConstants {
  double lambda = 0.0;
  double mu = 0.0;
};

/// Inverse of params_from_lambda_mu.
BifurcationConstants lambda_mu_from_params(double S0, double Q, const PhysicalParams& p);

struct DispersionRow {
  double k = 0.0;
  double lambda_star = 0.0;
  double S0 = 0.0;
  double surface_speed = 0.0;  ///< sqrt(lambda*)
  double sigma_over_gh2 = 0.0;
  double capillary_constant = 0.0;
  bool kernel_simple = true;
};

std::vector<DispersionRow> dispersion_table(std::span<const double> k_grid,
                                            const PhysicalParams& p, int n_max = 1000,
                                            double tol = 1e-10);

}  // namespace cgwave
