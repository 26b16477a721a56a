#pragma once

// Local bifurcation branch from the laminar state (lambda*, 0, 0): predictor
// w = s cos x, Newton correction with the first cosine coefficient frozen.

#include <string>
#include <vector>

#include "cgwave/params.hpp"
#include "cgwave/periodic_function.hpp"
#include "cgwave/residual.hpp"

namespace cgwave {

struct NewtonOptions {
  double tol = 1e-11;          ///< on the sup norm of the grid residual
  int max_iter = 25;
  double max_condition = 1e14;
};

struct BranchPoint {
  double s = 0.0;  ///< amplitude, equal to a_1(w)
  double lambda = 0.0;
  double mu = 0.0;
  PeriodicFunction w;
  double residual_norm = 0.0;
  int newton_iters = 0;
  double jacobian_condition = 0.0;  ///< of the last Jacobian factorised (0 if none)

  TrialState state() const { return {lambda, mu, w}; }
};

struct Branch {
  PhysicalParams params;  ///< with params.k = k_star
  double k_star = 0.0;
  double lambda_star = 0.0;
  double transversality = 0.0;
  int n_modes = 0;
  std::vector<BranchPoint> points;
  bool complete = true;
  std::string stop_reason;  ///< empty when complete
};

/// (lambda*^1(k), 0, s cos x) with n_modes modes on the default grid.
TrialState initial_guess(double s, double k, const PhysicalParams& p, int n_modes = 32);

/// Solves r_n = 0, n = 0..N, for (lambda, mu, a_2..a_N) with a_1 = s. Throws
/// NoConvergence, SingularJacobian or InadmissibleIterate.
BranchPoint newton_correct(const TrialState& guess, double s, const PhysicalParams& p,
                           const NewtonOptions& options = {});

/// Points at s = s_max j / steps, j = 1..steps, each warm-started from the
/// previous one; s_max = 0 yields the single trivial point. A Newton failure
/// ends the branch early with complete = false. Throws KernelNotSimple before
/// any tracing when the kernel scan fails at k.
Branch trace_branch(double k, const PhysicalParams& p, double s_max, int steps,
                    int n_modes = 32, const NewtonOptions& options = {},
                    int kernel_scan_limit = 1000, double kernel_tol = 1e-10);

struct PointDiagnostics {
  double s = 0.0;
  double evenness_defect = 0.0;  ///< largest sine coefficient of w
  int crests = 0;                ///< strict local maxima of w on the grid
  int troughs = 0;
  bool monotone = true;          ///< s w'(x) < 0 at grid points of (0, pi)
  AdmissibilityReport admissibility;
  double tail_fraction = 0.0;
  double lambda_defect = 0.0;    ///< |lambda - lambda*|
  double shape_defect = 0.0;     ///< ||w - s cos x||_inf / |s|, 0 at s = 0
  double residual_norm = 0.0;    ///< recomputed from stored coefficients
};

std::vector<PointDiagnostics> branch_diagnostics(const Branch& b);

}  // namespace cgwave
