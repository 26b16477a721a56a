#pragma once

// Quasilinear free-surface equation F(lambda, (mu, w)) = 0 for the surface
// elevation w = v - h in conformal variables, its building blocks A and B,
// the Fourier symbol of its linearisation at the laminar state, and
// admissibility guards.
//
// Notation on the collocation grid: G = 1/k + C_kh(w') (= G_kh(v)),
// metric = w'^2 + G^2, T = (G w'' - w' C_kh(w'')) / metric^{3/2}.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cgwave/params.hpp"
#include "cgwave/periodic_function.hpp"

namespace cgwave {

/// Unknowns of the residual: bifurcation parameter lambda = S0/h - g h/2,
/// Bernoulli offset mu, and the even zero-mean elevation w.
struct TrialState {
  double lambda = 0.0;
  double mu = 0.0;
  PeriodicFunction w;
};

/// Floors used by the residual guards.
inline constexpr double kMetricFloor = 1e-10;
inline constexpr double kMeanTolerance = 1e-10;
inline constexpr double kQuotientFloorFactor = 1e-8;

struct ResidualEvaluation {
  std::vector<double> samples;  ///< pointwise residual on the collocation grid
  PeriodicFunction function;    ///< analysed and truncated to N modes
  double sup_norm = 0.0;        ///< max |samples|
  double max_mean_correction = 0.0;  ///< largest mean removed before a C_kh
  double min_denominator = 0.0;      ///< min |quotient denominator|
  double min_metric = 0.0;
  double sine_sup = 0.0;  ///< largest sine coefficient before parity tagging
};

/// A = P_atm w' - sigma w' T.
PeriodicFunction coeff_A(const PeriodicFunction& w, const PhysicalParams& p);

/// B in its lambda form:
///   lambda/k - sigma/(kh) [w'^2 / (metric^{1/2} (G + metric^{1/2}))]
///   + g ([w^2]/(2kh) - w/k + C(w w') - w C(w'))
///   + sigma C((C(w'') w'^2 - G w'' w') / metric^{3/2}) + P_atm G.
/// Arguments of C are mean-corrected; a correction above 1e-10 throws MeanNotZero.
PeriodicFunction coeff_B(const PeriodicFunction& w, double lambda, const PhysicalParams& p);

/// Full pointwise evaluation with diagnostics. Throws SingularExpression when
/// the metric drops below 1e-10 or the quotient denominator below
/// 1e-8 |lambda|/k^2, and MeanNotZero as coeff_B.
ResidualEvaluation evaluate_residual(const TrialState& state, const PhysicalParams& p);

/// Residual as a function, truncated to the modes of w.
PeriodicFunction residual(const TrialState& state, const PhysicalParams& p);

/// Cosine projections r_n = a_n(residual), n = 0..N.
std::vector<double> galerkin_projection(const PeriodicFunction& r);

/// m_n = -(1/k^2) (lambda k n coth(nkh) - sigma k^2 n^2 - g), n >= 1. The
/// constant mode acts on mu as -1/k^2.
double linearization_symbol(double lambda, int n, const PhysicalParams& p);

/// Which unknowns a Jacobian differentiates with respect to. Columns are
/// ordered (lambda, mu, a_modes...).
struct UnknownSelector {
  bool lambda = true;
  bool mu = true;
  std::vector<int> modes;

  /// (lambda, mu, a_1..a_N)
  static UnknownSelector all(int n_modes);
  /// (lambda, mu, a_2..a_N): a_1 is the frozen amplitude in continuation.
  static UnknownSelector amplitude_frozen(int n_modes);
  int size() const { return (lambda ? 1 : 0) + (mu ? 1 : 0) + static_cast<int>(modes.size()); }
};

/// Central-difference Jacobian of the Galerkin projections r_0..r_N with
/// respect to the selected unknowns, step 1e-6 max(1, |theta_i|).
Eigen::MatrixXd jacobian_fd(const TrialState& state, const PhysicalParams& p,
                            const UnknownSelector& active);

struct AdmissibilityReport {
  double min_height = 0.0;          ///< min (w + h)
  double min_horizontal_speed = 0.0;///< min (1/k + C(w'))
  double min_metric = 0.0;          ///< min (w'^2 + G^2)
  double min_abscissa_step = 0.0;   ///< min increment of x/k + C(w)(x) between nodes
  double mean = 0.0;                ///< mean of w (must vanish)
  bool passed = false;
  std::vector<std::string> failures;
};

AdmissibilityReport check_admissibility(const PeriodicFunction& w, const PhysicalParams& p);

struct SurfaceEquationEvaluation {
  std::vector<double> samples;
  double sup_norm = 0.0;
};

/// The surface equation written directly in v = w + h with Dirichlet-Neumann
/// operators, S0 and the Bernoulli constant Q (left side minus right side).
/// Equals residual / metric when S0, Q correspond to (lambda, mu). Shares no
/// code with evaluate_residual beyond the strip operators.
SurfaceEquationEvaluation surface_equation_residual(const PeriodicFunction& v, double S0,
                                                    double Q, const PhysicalParams& p);

}  // namespace cgwave
