#include "cgwave/continuation.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cgwave/bifurcation.hpp"
#include "cgwave/errors.hpp"

namespace cgwave {

TrialState initial_guess(double s, double k, const PhysicalParams& p, int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("initial_guess: need at least one mode");
  const PhysicalParams pk = p.with_wavenumber(k);
  pk.validate();
  return {lambda_star(1, k, pk), 0.0, PeriodicFunction::cosine(1, s, n_modes)};
}

namespace {

TrialState with_amplitude(const TrialState& t, double s) {
  std::vector<double> a(t.w.cos_coeffs().begin(), t.w.cos_coeffs().end());
  if (a.size() < 2) throw std::invalid_argument("newton_correct: w needs at least one mode");
  a[0] = 0.0;
  a[1] = s;
  return {t.lambda, t.mu, PeriodicFunction(std::move(a), {}, t.w.grid_size())};
}

void require_admissible(const TrialState& t, const PhysicalParams& p, int iteration) {
  const AdmissibilityReport rep = check_admissibility(t.w, p);
  if (!rep.passed) {
    std::string msg = "newton_correct: inadmissible iterate at iteration " +
                      std::to_string(iteration) + ":";
    for (const auto& f : rep.failures) msg += " " + f + ";";
    throw InadmissibleIterate(msg);
  }
}

}  // namespace

BranchPoint newton_correct(const TrialState& guess, double s, const PhysicalParams& p,
                           const NewtonOptions& options) {
  TrialState state = with_amplitude(guess, s);
  const int n_modes = state.w.modes();
  const UnknownSelector unknowns = UnknownSelector::amplitude_frozen(n_modes);
  double condition = 0.0;

  // Once the tolerance is met, one more step is taken and kept only if it
  // lowers the residual, so accepted points sit near roundoff rather than
  // just under tol.
  bool polishing = false;
  double accepted_norm = 0.0;
  TrialState accepted;
  int accepted_iter = 0;
  for (int iter = 0;; ++iter) {
    if (polishing) {
      const AdmissibilityReport rep = check_admissibility(state.w, p);
      double norm = INFINITY;
      if (rep.passed) {
        try {
          norm = evaluate_residual(state, p).sup_norm;
        } catch (const Error&) {
        }
      }
      if (norm < accepted_norm) return {s, state.lambda, state.mu, state.w, norm, iter, condition};
      return {s, accepted.lambda, accepted.mu, accepted.w, accepted_norm, accepted_iter, condition};
    }
    require_admissible(state, p, iter);
    const ResidualEvaluation eval = evaluate_residual(state, p);
    if (eval.sup_norm < options.tol) {
      if (iter == 0 || eval.sup_norm == 0.0) {
        return {s, state.lambda, state.mu, state.w, eval.sup_norm, iter, condition};
      }
      polishing = true;
      accepted = state;
      accepted_norm = eval.sup_norm;
      accepted_iter = iter;
    } else if (iter >= options.max_iter) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    "newton_correct: no convergence after %d iterations, residual %.3e", iter,
                    eval.sup_norm);
      throw NoConvergence(msg, iter, eval.sup_norm);
    }

    const Eigen::MatrixXd J = jacobian_fd(state, p, unknowns);
    const std::vector<double> r = galerkin_projection(eval.function);
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(r.data(), n_modes + 1);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                        : std::numeric_limits<double>::infinity();
    if (!(condition <= options.max_condition)) {
      throw SingularJacobian("newton_correct: Jacobian condition number " +
                                 std::to_string(condition) + " exceeds limit",
                             condition);
    }
    const Eigen::VectorXd delta = svd.solve(rhs);

    std::vector<double> a(state.w.cos_coeffs().begin(), state.w.cos_coeffs().end());
    state.lambda -= delta(0);
    state.mu -= delta(1);
    for (int i = 0; i < static_cast<int>(unknowns.modes.size()); ++i) {
      a[unknowns.modes[i]] -= delta(2 + i);
    }
    state.w = PeriodicFunction(std::move(a), {}, state.w.grid_size());
  }
}

Branch trace_branch(double k, const PhysicalParams& p, double s_max, int steps, int n_modes,
                    const NewtonOptions& options, int kernel_scan_limit, double kernel_tol) {
  const PhysicalParams pk = p.with_wavenumber(k);
  pk.validate();
  if (steps < 1) throw std::invalid_argument("trace_branch: steps must be >= 1");
  if (!std::isfinite(s_max)) throw std::invalid_argument("trace_branch: s_max must be finite");

  const KernelReport kernel = kernel_is_simple(k, pk, kernel_scan_limit, kernel_tol);
  if (!kernel.simple) {
    throw KernelNotSimple("trace_branch: kernel not simple at k = " + std::to_string(k) +
                              ", lambda*^1 collides with mode " +
                              std::to_string(*kernel.colliding_mode),
                          *kernel.colliding_mode);
  }

  Branch b;
  b.params = pk;
  b.k_star = k;
  b.lambda_star = kernel.lambda_star;
  b.transversality = transversality_value(k, pk);
  b.n_modes = n_modes;

  if (s_max == 0.0) {
    b.points.push_back(newton_correct(initial_guess(0.0, k, pk, n_modes), 0.0, pk, options));
    return b;
  }

  TrialState seed = initial_guess(s_max / steps, k, pk, n_modes);
  for (int j = 1; j <= steps; ++j) {
    const double s = s_max * j / steps;
    try {
      const BranchPoint point = newton_correct(seed, s, pk, options);
      b.points.push_back(point);
      seed = point.state();
    } catch (const Error& e) {
      b.complete = false;
      b.stop_reason = e.what();
      break;
    }
  }
  return b;
}

std::vector<PointDiagnostics> branch_diagnostics(const Branch& b) {
  std::vector<PointDiagnostics> out;
  out.reserve(b.points.size());
  for (const BranchPoint& pt : b.points) {
    PointDiagnostics d;
    d.s = pt.s;
    for (double v : pt.w.sin_coeffs()) d.evenness_defect = std::max(d.evenness_defect, std::abs(v));

    const auto w = pt.w.grid_samples();
    const int M = static_cast<int>(w.size());
    for (int j = 0; j < M; ++j) {
      const double left = w[(j + M - 1) % M];
      const double right = w[(j + 1) % M];
      if (w[j] > left && w[j] >= right) ++d.crests;
      if (w[j] < left && w[j] <= right) ++d.troughs;
    }

    if (pt.s != 0.0) {
      const PeriodicFunction wp_f = derivative(pt.w);
      const auto wp = wp_f.grid_samples();
      for (int j = 1; 2 * j < M; ++j) {
        if (!(pt.s * wp[j] < 0.0)) d.monotone = false;
      }
      const PeriodicFunction diff = pt.w - PeriodicFunction::cosine(1, pt.s, pt.w.modes(),
                                                                    pt.w.grid_size());
      d.shape_defect = diff.sup_norm() / std::abs(pt.s);
    }

    d.admissibility = check_admissibility(pt.w, b.params);
    d.tail_fraction = pt.w.tail_energy_fraction();
    d.lambda_defect = std::abs(pt.lambda - b.lambda_star);
    d.residual_norm = evaluate_residual(pt.state(), b.params).sup_norm;
    out.push_back(d);
  }
  return out;
}

}  // namespace cgwave
