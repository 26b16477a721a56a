#include "cgwave/residual.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cgwave/compose.hpp"
#include "cgwave/errors.hpp"
#include "cgwave/kernels.hpp"
#include "cgwave/strip.hpp"

namespace cgwave {

void PhysicalParams::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(g) || !finite(sigma) || !finite(h) || !finite(k) || !finite(p_atm)) {
    throw std::invalid_argument("PhysicalParams: all values must be finite");
  }
  if (g < 0.0) throw std::invalid_argument("PhysicalParams: g must be >= 0");
  if (sigma < 0.0) throw std::invalid_argument("PhysicalParams: sigma must be >= 0");
  if (!(g + sigma > 0.0)) throw std::invalid_argument("PhysicalParams: g + sigma must be > 0");
  if (!(h > 0.0)) throw std::invalid_argument("PhysicalParams: h must be > 0");
  if (!(k > 0.0)) throw std::invalid_argument("PhysicalParams: k must be > 0");
}

namespace {

// Everything the residual needs on the collocation grid, computed once per w.
struct SurfaceTerms {
  int modes = 0;
  int grid = 0;
  std::vector<double> w, wp, wpp, Cwp, G, Cwpp;
  std::vector<double> metric, root, curvature;
  double max_mean_correction = 0.0;
};

PeriodicFunction zero_mean(const PeriodicFunction& f, const std::string& what, double& max_corr) {
  const double m = f.mean();
  if (std::abs(m) > kMeanTolerance * std::max(1.0, f.coefficient_sup())) {
    throw MeanNotZero(what + ": argument of C_kh has mean " + std::to_string(m), m);
  }
  max_corr = std::max(max_corr, std::abs(m));
  return f.with_mean(0.0);
}

std::vector<double> copy(std::span<const double> s) { return {s.begin(), s.end()}; }

void require_zero_mean_state(const PeriodicFunction& w) {
  if (std::abs(w.mean()) > 1e-12 * std::max(1.0, w.coefficient_sup())) {
    throw MeanNotZero("residual: elevation w must have zero mean", w.mean());
  }
}

SurfaceTerms surface_terms(const PeriodicFunction& w, const PhysicalParams& p) {
  p.validate();
  require_zero_mean_state(w);
  const StripParams strip(p.depth());
  SurfaceTerms s;
  s.modes = w.modes();
  s.grid = w.grid_size();

  const PeriodicFunction wp = derivative(w);
  const PeriodicFunction wpp = derivative(wp);
  s.w = copy(w.grid_samples());
  s.wp = copy(wp.grid_samples());
  s.wpp = copy(wpp.grid_samples());
  s.Cwp = copy(hilbert_strip(wp, strip).grid_samples());
  s.Cwpp = copy(hilbert_strip(wpp, strip).grid_samples());
  s.G.resize(s.grid);
  for (int j = 0; j < s.grid; ++j) s.G[j] = 1.0 / p.k + s.Cwp[j];

  s.metric.resize(s.grid);
  s.root.resize(s.grid);
  s.curvature.resize(s.grid);
  kernels::active().surface_geometry({s.wp, s.wpp, s.G, s.Cwpp},
                                     {s.metric, s.root, s.curvature});
  require_bounded_away(s.metric, kMetricFloor, "metric w'^2 + (1/k + C(w'))^2");
  return s;
}

// C_kh applied to pointwise data after truncation to N modes and mean removal.
std::vector<double> hilbert_of_samples(const std::vector<double>& values, int modes,
                                       const PhysicalParams& p, const std::string& what,
                                       double& max_corr) {
  const PeriodicFunction f = analyze(values, modes);
  return copy(hilbert_strip(zero_mean(f, what, max_corr), StripParams(p.depth())).grid_samples());
}

std::vector<double> b_samples(SurfaceTerms& s, double lambda, const PhysicalParams& p) {
  const int M = s.grid;
  const double kh = p.depth();

  std::vector<double> tmp(M);
  for (int j = 0; j < M; ++j) tmp[j] = s.root[j] * (s.G[j] + s.root[j]);
  require_bounded_away(tmp, kMetricFloor, "B: metric^{1/2} (G + metric^{1/2})");
  for (int j = 0; j < M; ++j) tmp[j] = s.wp[j] * s.wp[j] / tmp[j];
  const double bracket = period_average(tmp);

  for (int j = 0; j < M; ++j) tmp[j] = s.w[j] * s.w[j];
  const double mean_w2 = period_average(tmp);

  for (int j = 0; j < M; ++j) tmp[j] = s.w[j] * s.wp[j];
  const std::vector<double> C_wwp =
      hilbert_of_samples(tmp, s.modes, p, "B: C(w w')", s.max_mean_correction);

  for (int j = 0; j < M; ++j) {
    tmp[j] = (s.Cwpp[j] * s.wp[j] * s.wp[j] - s.G[j] * s.wpp[j] * s.wp[j]) /
             (s.metric[j] * s.root[j]);
  }
  const std::vector<double> C_arg =
      hilbert_of_samples(tmp, s.modes, p, "B: C(curvature flux)", s.max_mean_correction);

  std::vector<double> B(M);
  const double constant = lambda / p.k - p.sigma / kh * bracket + p.g * mean_w2 / (2.0 * kh);
  for (int j = 0; j < M; ++j) {
    const double gravity = -s.w[j] / p.k + C_wwp[j] - s.w[j] * s.Cwp[j];
    B[j] = constant + p.g * gravity + p.sigma * C_arg[j] + p.p_atm * s.G[j];
  }
  return B;
}

}  // namespace

PeriodicFunction coeff_A(const PeriodicFunction& w, const PhysicalParams& p) {
  const SurfaceTerms s = surface_terms(w, p);
  std::vector<double> A(s.grid);
  for (int j = 0; j < s.grid; ++j) {
    A[j] = p.p_atm * s.wp[j] - p.sigma * s.wp[j] * s.curvature[j];
  }
  return analyze(A, s.modes);
}

PeriodicFunction coeff_B(const PeriodicFunction& w, double lambda, const PhysicalParams& p) {
  SurfaceTerms s = surface_terms(w, p);
  return analyze(b_samples(s, lambda, p), s.modes);
}

ResidualEvaluation evaluate_residual(const TrialState& state, const PhysicalParams& p) {
  SurfaceTerms s = surface_terms(state.w, p);
  const std::vector<double> B = b_samples(s, state.lambda, p);

  ResidualEvaluation out;
  out.samples.resize(s.grid);
  std::vector<double> denominator(s.grid);
  kernels::active().assemble_residual(
      {s.w, s.wp, s.G, s.metric, s.curvature, B, state.lambda + state.mu, p.sigma, p.g, p.p_atm},
      {out.samples, denominator});

  const double floor =
      std::max(kQuotientFloorFactor * std::abs(state.lambda) / (p.k * p.k), DBL_MIN);
  require_bounded_away(denominator, floor, "residual: quotient denominator");

  // Sine content is judged against the size of the terms that cancel in F, so
  // that a converged (nearly zero) residual of an even state stays even.
  const PeriodicFunction general = analyze(out.samples, s.modes, ParityMode::force_general);
  double term_scale = general.coefficient_sup();
  for (double d : denominator) term_scale = std::max(term_scale, std::abs(d));
  for (double b : general.sin_coeffs()) out.sine_sup = std::max(out.sine_sup, std::abs(b));
  if (out.sine_sup <= 1e-12 * term_scale) {
    out.function = PeriodicFunction(copy(general.cos_coeffs()), {}, s.grid);
  } else {
    out.function = general;
  }
  out.sup_norm = 0.0;
  for (double v : out.samples) out.sup_norm = std::max(out.sup_norm, std::abs(v));
  out.max_mean_correction = s.max_mean_correction;
  out.min_denominator = std::abs(denominator[0]);
  for (double d : denominator) out.min_denominator = std::min(out.min_denominator, std::abs(d));
  out.min_metric = *std::min_element(s.metric.begin(), s.metric.end());
  return out;
}

PeriodicFunction residual(const TrialState& state, const PhysicalParams& p) {
  return evaluate_residual(state, p).function;
}

std::vector<double> galerkin_projection(const PeriodicFunction& r) {
  return {r.cos_coeffs().begin(), r.cos_coeffs().end()};
}

double linearization_symbol(double lambda, int n, const PhysicalParams& p) {
  if (n < 1) throw std::invalid_argument("linearization_symbol: n must be >= 1");
  const double kn = p.k * n;
  return -(lambda * kn * coth_mode(n, p.depth()) - p.sigma * kn * kn - p.g) / (p.k * p.k);
}

UnknownSelector UnknownSelector::all(int n_modes) {
  UnknownSelector u;
  for (int n = 1; n <= n_modes; ++n) u.modes.push_back(n);
  return u;
}

UnknownSelector UnknownSelector::amplitude_frozen(int n_modes) {
  UnknownSelector u;
  for (int n = 2; n <= n_modes; ++n) u.modes.push_back(n);
  return u;
}

namespace {

TrialState shifted(const TrialState& state, const UnknownSelector& active, int column,
                   double delta) {
  TrialState t = state;
  int c = 0;
  if (active.lambda && c++ == column) {
    t.lambda += delta;
    return t;
  }
  if (active.mu && c++ == column) {
    t.mu += delta;
    return t;
  }
  const int mode = active.modes.at(column - c);
  std::vector<double> a(state.w.cos_coeffs().begin(), state.w.cos_coeffs().end());
  std::vector<double> b(state.w.sin_coeffs().begin(), state.w.sin_coeffs().end());
  a.at(mode) += delta;
  t.w = PeriodicFunction(std::move(a), std::move(b), state.w.grid_size());
  return t;
}

double unknown_value(const TrialState& state, const UnknownSelector& active, int column) {
  int c = 0;
  if (active.lambda && c++ == column) return state.lambda;
  if (active.mu && c++ == column) return state.mu;
  return state.w.a(active.modes.at(column - c));
}

}  // namespace

Eigen::MatrixXd jacobian_fd(const TrialState& state, const PhysicalParams& p,
                            const UnknownSelector& active) {
  const int n_modes = state.w.modes();
  for (int m : active.modes) {
    if (m < 1 || m > n_modes) throw std::invalid_argument("jacobian_fd: mode out of range");
  }
  Eigen::MatrixXd J(n_modes + 1, active.size());
  for (int c = 0; c < active.size(); ++c) {
    const double eps = 1e-6 * std::max(1.0, std::abs(unknown_value(state, active, c)));
    const auto plus = galerkin_projection(residual(shifted(state, active, c, eps), p));
    const auto minus = galerkin_projection(residual(shifted(state, active, c, -eps), p));
    for (int r = 0; r <= n_modes; ++r) J(r, c) = (plus[r] - minus[r]) / (2.0 * eps);
  }
  return J;
}

AdmissibilityReport check_admissibility(const PeriodicFunction& w, const PhysicalParams& p) {
  p.validate();
  AdmissibilityReport rep;
  const StripParams strip(p.depth());
  rep.mean = w.mean();
  if (std::abs(rep.mean) > 1e-12 * std::max(1.0, w.coefficient_sup())) {
    rep.failures.push_back("elevation has nonzero mean");
  }
  const PeriodicFunction w0 = w.with_mean(0.0);
  const int M = w.grid_size();
  const auto ws = w.grid_samples();
  const PeriodicFunction wp_f = derivative(w0);
  const PeriodicFunction Cwp_f = hilbert_strip(wp_f, strip);
  const PeriodicFunction Cw_f = hilbert_strip(w0, strip);
  const auto wp = wp_f.grid_samples();
  const auto Cwp = Cwp_f.grid_samples();
  const auto Cw = Cw_f.grid_samples();

  rep.min_height = ws[0] + p.h;
  rep.min_horizontal_speed = 1.0 / p.k + Cwp[0];
  rep.min_metric = wp[0] * wp[0] + rep.min_horizontal_speed * rep.min_horizontal_speed;
  rep.min_abscissa_step = INFINITY;
  const double period = 2.0 * std::numbers::pi / p.k;
  for (int j = 0; j < M; ++j) {
    const double G = 1.0 / p.k + Cwp[j];
    rep.min_height = std::min(rep.min_height, ws[j] + p.h);
    rep.min_horizontal_speed = std::min(rep.min_horizontal_speed, G);
    rep.min_metric = std::min(rep.min_metric, wp[j] * wp[j] + G * G);
    const double X = period * j / M + Cw[j];
    const double X_next = j + 1 < M ? period * (j + 1) / M + Cw[j + 1] : period + Cw[0];
    rep.min_abscissa_step = std::min(rep.min_abscissa_step, X_next - X);
  }
  if (!(rep.min_height > 0.0)) rep.failures.push_back("surface touches bed");
  if (!(rep.min_horizontal_speed > 0.0)) {
    rep.failures.push_back("horizontal surface speed 1/k + C(w') not positive");
  }
  if (!(rep.min_metric > 0.0)) rep.failures.push_back("degenerate conformal metric");
  if (!(rep.min_abscissa_step > 0.0)) rep.failures.push_back("surface abscissa not monotone");
  rep.passed = rep.failures.empty();
  return rep;
}

SurfaceEquationEvaluation surface_equation_residual(const PeriodicFunction& v, double S0,
                                                    double Q, const PhysicalParams& p) {
  p.validate();
  const StripParams strip(p.depth());
  const double kh = p.depth();
  const int n_modes = v.modes();
  const int M = v.grid_size();

  const PeriodicFunction Gv = dirichlet_neumann(v, strip);
  const PeriodicFunction vp = derivative(v);
  const PeriodicFunction vpp = derivative(vp);
  const PeriodicFunction Gvp = dirichlet_neumann(vp, strip);

  const std::vector<PeriodicFunction> vv{v};
  ComposeOptions opts;
  opts.modes = n_modes;
  const PeriodicFunction half_v2 =
      pointwise_compose(vv, [](std::span<const double> x) { return 0.5 * x[0] * x[0]; }, opts);
  const std::vector<PeriodicFunction> slope{Gv, vp};
  opts.denominator = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
  opts.floor = kMetricFloor;
  opts.what = "surface equation: metric";
  const PeriodicFunction q = pointwise_compose(
      slope, [](std::span<const double> x) { return x[0] / std::sqrt(x[0] * x[0] + x[1] * x[1]); },
      opts);

  const auto G_half_v2 = dirichlet_neumann(half_v2, strip).sample(M);
  const auto G_q = dirichlet_neumann(q, strip).sample(M);
  const auto vs = v.sample(M);
  const auto Gs = Gv.sample(M);
  const auto d1 = vp.sample(M);
  const auto d2 = vpp.sample(M);
  const auto Gd1 = Gvp.sample(M);

  SurfaceEquationEvaluation out;
  out.samples.resize(M);
  std::vector<double> denom(M);
  for (int j = 0; j < M; ++j) {
    const double metric = Gs[j] * Gs[j] + d1[j] * d1[j];
    const double T = (Gs[j] * d2[j] - Gd1[j] * d1[j]) / std::pow(metric, 1.5);
    const double A = p.p_atm * d1[j] - p.sigma * d1[j] * T;
    const double B = (S0 - p.sigma) / kh + p.p_atm * Gs[j] +
                     p.g * (G_half_v2[j] - vs[j] * Gs[j]) + p.sigma * G_q[j];
    const double D = A * d1[j] + B * Gs[j] - (p.p_atm - p.sigma * T) * metric;
    const double num = A * Gs[j] - B * d1[j];
    denom[j] = D;
    out.samples[j] = num * num / (metric * D) + (A * d1[j] + B * Gs[j]) / metric - p.p_atm +
                     p.sigma * T - (Q + 2.0 * p.sigma * T - 2.0 * p.g * vs[j]);
  }
  double scale = 0.0;
  for (double d : denom) scale = std::max(scale, std::abs(d));
  require_bounded_away(denom, std::max(kQuotientFloorFactor * scale, DBL_MIN),
                       "surface equation: quotient denominator");
  for (double e : out.samples) out.sup_norm = std::max(out.sup_norm, std::abs(e));
  return out;
}

}  // namespace cgwave
