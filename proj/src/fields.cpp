#include "cgwave/fields.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cgwave/bifurcation.hpp"
#include "cgwave/errors.hpp"
#include "cgwave/kernels.hpp"
#include "cgwave/residual.hpp"

namespace cgwave {

namespace {

using Component = StripHarmonic::Component;

// Boundary functions of the surface in the conformal parameter x.
struct SurfaceData {
  PeriodicFunction w;
  PeriodicFunction v;
  PeriodicFunction Cw;    // C_kh(w)
  PeriodicFunction up;    // u' = 1/k + C_kh(w')
  PeriodicFunction upp;   // u'' = C_kh(w'')
  PeriodicFunction q;     // e0 / eta as a function of the surface parameter
  PeriodicFunction qp;
  PeriodicFunction qpp;
  double Cw_bound = 0.0;  // sum of |coefficients| of C_kh(w), bounds |C_kh(w)|
};

int resolve_grid(int requested, const PeriodicFunction& w) {
  const int m = requested > 0 ? requested : w.grid_size();
  if (m < 2 * w.modes() + 2) throw std::invalid_argument("grid too coarse for the branch point");
  return m;
}

// e on the surface: -P_atm v - sigma u'/sqrt(u'^2 + v'^2) + sigma.
std::vector<double> surface_e(const PeriodicFunction& v, const PeriodicFunction& up,
                              const PhysicalParams& p, int m) {
  const auto vs = v.sample(m);
  const auto ups = up.sample(m);
  const auto vps = derivative(v).sample(m);
  std::vector<double> e(m);
  for (int j = 0; j < m; ++j) {
    const double speed = std::sqrt(ups[j] * ups[j] + vps[j] * vps[j]);
    e[j] = -p.p_atm * vs[j] - p.sigma * ups[j] / speed + p.sigma;
  }
  return e;
}

SurfaceData surface_data(const BranchPoint& point, const PhysicalParams& p, int m) {
  p.validate();
  const StripParams strip(p.depth());
  SurfaceData s;
  s.w = point.w.on_grid(std::max(m, point.w.grid_size()));
  s.v = s.w + p.h;
  s.Cw = hilbert_strip(s.w.with_mean(0.0), strip);
  s.up = hilbert_strip(derivative(s.w), strip) + 1.0 / p.k;
  s.upp = hilbert_strip(derivative(derivative(s.w)), strip);
  for (double c : s.Cw.cos_coeffs()) s.Cw_bound += std::abs(c);
  for (double c : s.Cw.sin_coeffs()) s.Cw_bound += std::abs(c);

  const int mq = s.w.grid_size();
  const auto e = surface_e(s.v, s.up, p, mq);
  const auto vs = s.v.grid_samples();
  std::vector<double> q(mq);
  for (int j = 0; j < mq; ++j) {
    if (!(vs[j] > 0.0)) throw InadmissibleIterate("surface touches bed");
    q[j] = e[j] / vs[j];
  }
  s.q = analyze(q);
  s.qp = derivative(s.q);
  s.qpp = derivative(s.qp);
  return s;
}

// Solves a + x/k + C_kh(w)(x) = X for x by Newton's method safeguarded with bisection.
double invert_abscissa(const SurfaceData& s, const PhysicalParams& p, double a, double X) {
  const double centre = p.k * (X - a);
  double lo = centre - p.k * s.Cw_bound - 1e-12;
  double hi = centre + p.k * s.Cw_bound + 1e-12;
  double x = centre;
  for (int it = 0; it < 200; ++it) {
    const double f = a + x / p.k + s.Cw(x) - X;
    if (f == 0.0) return x;
    if (f < 0.0) lo = std::max(lo, x);
    else hi = std::min(hi, x);
    const double df = s.up(x);
    double next = df > 0.0 ? x - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 1e-13 * std::max(1.0, std::abs(x))) return x;
    if (hi - lo <= 1e-13 * std::max(1.0, std::abs(x))) return 0.5 * (lo + hi);
  }
  throw SurfaceInversionFailed("surface abscissa inversion did not converge for X = " +
                               std::to_string(X));
}

struct Reconstruction {
  FlowForceField field;
  StripGridField xs;  // surface parameter x_s with u(x_s) = U at each node
  SurfaceData surface;
};

StripGridField harmonic_field(const PeriodicFunction& boundary, double d, int mx, int my,
                              StripHarmonic::Kind kind, Component c = Component::value) {
  return StripHarmonic(boundary, StripParams(d), kind).sample(mx, my, c);
}

Reconstruction build(const BranchPoint& point, const PhysicalParams& p, double S0, int mx,
                     int my, double a) {
  const double d = p.depth();
  SurfaceData s = surface_data(point, p, mx);

  StripGridField U = harmonic_field(s.w.with_mean(0.0), d, mx, my, StripHarmonic::Kind::conjugate);
  for (int m = 0; m <= my; ++m) {
    for (int j = 0; j < mx; ++j) U.at(m, j) += a + U.x(j) / p.k;
  }
  StripGridField V = harmonic_field(s.v, d, mx, my, StripHarmonic::Kind::extension);

  // zeta boundary data on a grid fine enough for both the branch modes and mx.
  const int mz = std::max(mx, s.w.grid_size());
  const auto e_surface = surface_e(s.v, s.up, p, mz);
  const auto vz = s.v.sample(mz);
  std::vector<double> zb(mz);
  for (int j = 0; j < mz; ++j) zb[j] = S0 - e_surface[j] + 0.5 * p.g * vz[j] * vz[j];
  const PeriodicFunction zeta_boundary = analyze(zb);
  StripGridField zeta = harmonic_field(zeta_boundary, d, mx, my, StripHarmonic::Kind::extension);

  StripGridField xi(mx, my, d), e(mx, my, d), S(mx, my, d), xs(mx, my, d);
  for (int m = 0; m <= my; ++m) {
    for (int j = 0; j < mx; ++j) {
      const double Y = V.at(m, j);
      xi.at(m, j) = zeta.at(m, j) - 0.5 * p.g * Y * Y;
      double ev = 0.0;
      double x_s = 0.0;
      if (m > 0) {
        x_s = invert_abscissa(s, p, a, U.at(m, j));
        ev = s.q(x_s) * Y;
      }
      xs.at(m, j) = x_s;
      e.at(m, j) = ev;
      S.at(m, j) = xi.at(m, j) + ev;
    }
  }

  Reconstruction r{FlowForceField{std::move(U), std::move(V), std::move(zeta), std::move(xi),
                                  std::move(e), std::move(S), S0, a},
                   std::move(xs), std::move(s)};
  return r;
}

double interior_sup(const StripGridField& f) {
  double sup = 0.0;
  for (int m = 1; m < f.my(); ++m) {
    for (double v : f.row(m)) sup = std::max(sup, std::abs(v));
  }
  return sup;
}

StripGridField laplacian(const StripGridField& f) {
  StripGridField out(f.mx(), f.my(), f.d());
  kernels::active().laplacian5(f.values().data(), out.values().data(),
                               static_cast<std::size_t>(f.rows()),
                               static_cast<std::size_t>(f.mx()), f.dx(), f.dy());
  return out;
}

// Largest rounding error the five-point stencil can produce on data of size `scale`.
double stencil_roundoff(const StripGridField& f, double scale) {
  return 16.0 * DBL_EPSILON * scale * (4.0 / (f.dx() * f.dx()) + 4.0 / (f.dy() * f.dy()));
}

struct AuditSample {
  double defect = 0.0;
  double floor = 0.0;
};

AuditSample harmonicity_defect(const FlowForceField& f, const PhysicalParams& p) {
  StripGridField z(f.xi.mx(), f.xi.my(), f.xi.d());
  for (std::size_t i = 0; i < z.values().size(); ++i) {
    const double Y = f.V.values()[i];
    z.values()[i] = f.xi.values()[i] + 0.5 * p.g * Y * Y;
  }
  return {interior_sup(laplacian(z)), stencil_roundoff(z, std::max(1.0, z.sup_norm()))};
}

AuditSample flow_force_pde_defect(const Reconstruction& r, const BranchPoint& point,
                                  const PhysicalParams& p) {
  const FlowForceField& f = r.field;
  const int mx = f.S.mx();
  const int my = f.S.my();
  const double d = p.depth();
  const PeriodicFunction w0 = point.w.with_mean(0.0);
  const StripGridField Ux = harmonic_field(w0, d, mx, my, StripHarmonic::Kind::conjugate, Component::dx);
  const StripGridField Vx = harmonic_field(w0 + p.h, d, mx, my, StripHarmonic::Kind::extension, Component::dx);
  const StripGridField lap = laplacian(f.S);

  double defect = 0.0;
  double min_jac = INFINITY;
  for (int m = 1; m < my; ++m) {
    for (int j = 0; j < mx; ++j) {
      const double ux = 1.0 / p.k + Ux.at(m, j);
      const double vx = Vx.at(m, j);
      const double J = ux * ux + vx * vx;
      min_jac = std::min(min_jac, J);
      const double x_s = r.xs.at(m, j);
      const double u1 = r.surface.up(x_s);
      const double u2 = r.surface.upp(x_s);
      const double q_XX = (r.surface.qpp(x_s) * u1 - r.surface.qp(x_s) * u2) / (u1 * u1 * u1);
      const double target = -p.g + q_XX * f.V.at(m, j);
      defect = std::max(defect, std::abs(lap.at(m, j) / J - target));
    }
  }
  const double scale =
      std::max({1.0, f.S.sup_norm(), f.zeta.sup_norm(), f.e.sup_norm()});
  return {defect, stencil_roundoff(f.S, scale) / min_jac};
}

RefinementAudit finish_audit(const AuditSample& coarse, const AuditSample& fine) {
  RefinementAudit a;
  a.coarse = coarse.defect;
  a.fine = fine.defect;
  a.ratio = fine.defect > 0.0 ? coarse.defect / fine.defect : INFINITY;
  a.order = std::log2(a.ratio);
  a.roundoff_floor = fine.floor;
  a.resolved = fine.defect > fine.floor && coarse.defect > coarse.floor;
  return a;
}

}  // namespace

SurfaceCurve surface_curve(const BranchPoint& point, const PhysicalParams& p, double a, int grid) {
  p.validate();
  const int m = resolve_grid(grid, point.w);
  const PeriodicFunction w0 = point.w.with_mean(0.0);
  const auto Cw = hilbert_strip(w0, StripParams(p.depth())).sample(m);
  const auto v = (point.w + p.h).sample(m);
  SurfaceCurve c;
  c.a = a;
  c.x.resize(m);
  c.X.resize(m);
  c.Y = v;
  for (int j = 0; j < m; ++j) {
    c.x[j] = 2.0 * std::numbers::pi * j / m;
    c.X[j] = a + c.x[j] / p.k + Cw[j];
    if (!(c.Y[j] > 0.0)) throw InadmissibleIterate("surface_curve: surface touches bed");
  }
  const double period = 2.0 * std::numbers::pi / p.k;
  for (int j = 0; j < m; ++j) {
    const double next = j + 1 < m ? c.X[j + 1] : c.X[0] + period;
    if (!(next > c.X[j])) throw InadmissibleIterate("surface_curve: surface is not a graph");
  }
  return c;
}

ConformalMap conformal_map(const BranchPoint& point, const PhysicalParams& p, int my, int mx,
                           double a) {
  p.validate();
  const int m = resolve_grid(mx, point.w);
  const double d = p.depth();
  StripGridField U = harmonic_field(point.w.with_mean(0.0), d, m, my, StripHarmonic::Kind::conjugate);
  for (int r = 0; r <= my; ++r) {
    for (int j = 0; j < m; ++j) U.at(r, j) += a + U.x(j) / p.k;
  }
  StripGridField V = harmonic_field(point.w + p.h, d, m, my, StripHarmonic::Kind::extension);
  return {std::move(U), std::move(V)};
}

StripGridField solve_zeta(const BranchPoint& point, const PhysicalParams& p, double S0, int my,
                          int mx) {
  p.validate();
  const int m = resolve_grid(mx, point.w);
  const SurfaceData s = surface_data(point, p, m);
  const int mz = std::max(m, s.w.grid_size());
  const auto e = surface_e(s.v, s.up, p, mz);
  const auto v = s.v.sample(mz);
  std::vector<double> zb(mz);
  for (int j = 0; j < mz; ++j) zb[j] = S0 - e[j] + 0.5 * p.g * v[j] * v[j];
  return harmonic_field(analyze(zb), p.depth(), m, my, StripHarmonic::Kind::extension);
}

FlowForceField reconstruct_S(const BranchPoint& point, const PhysicalParams& p, double S0,
                             int my, int mx, double a) {
  return build(point, p, S0, resolve_grid(mx, point.w), my, a).field;
}

double laminar_S(double Y, double S0, const PhysicalParams& p) {
  return -0.5 * p.g * Y * Y + (S0 / p.h + 0.5 * p.g * p.h) * Y;
}

double laminar_surface_speed_squared(double S0, const PhysicalParams& p) {
  return S0 / p.h - 0.5 * p.g * p.h;
}

double relative_change(std::span<const double> r0, std::span<const double> r1, double reference) {
  if (r0.size() != r1.size()) throw std::invalid_argument("relative_change: size mismatch");
  double diff = 0.0;
  double base = std::abs(reference);
  for (std::size_t i = 0; i < r0.size(); ++i) {
    diff = std::max(diff, std::abs(r1[i] - r0[i]));
    base = std::max(base, std::abs(r0[i]));
  }
  return base > 0.0 ? diff / base : diff;
}

ValidationReport validate_solution(const FlowForceField& field, const BranchPoint& point,
                                   const PhysicalParams& p, const ValidationThresholds& th) {
  ValidationReport rep;
  const int mx = field.S.mx();
  const int my = field.S.my();

  // (a) harmonicity of xi + (g/2) V^2 and the flow-force PDE, at two resolutions.
  const Reconstruction coarse = build(point, p, field.S0, mx, my, field.a);
  const Reconstruction fine = build(point, p, field.S0, 2 * mx, 2 * my, field.a);
  rep.harmonicity = finish_audit(harmonicity_defect(field, p), harmonicity_defect(fine.field, p));
  rep.harmonicity.passed =
      !rep.harmonicity.resolved ||
      std::abs(rep.harmonicity.ratio - th.ratio_center) <= th.ratio_halfwidth;
  rep.flow_force_pde = finish_audit(flow_force_pde_defect(coarse, point, p),
                                    flow_force_pde_defect(fine, point, p));
  rep.flow_force_pde.passed = !rep.flow_force_pde.resolved || rep.flow_force_pde.order >= th.min_order;

  // (b) traces of S.
  for (double v : field.S.row(0)) rep.bed_trace = std::max(rep.bed_trace, std::abs(v));
  for (double v : field.S.row(my)) {
    rep.surface_trace = std::max(rep.surface_trace, std::abs(v - field.S0));
  }

  // (c) surface equation in v = w + h, and (e) its gauge independence.
  const double lambda_ref = point.lambda != 0.0 ? std::abs(point.lambda) : 1.0;
  const FlowForceConstants c = params_from_lambda_mu(point.lambda, point.mu, p);
  const PeriodicFunction v = point.w + p.h;
  const SurfaceEquationEvaluation E = surface_equation_residual(v, c.S0, c.Q, p);
  rep.surface_equation_raw = E.sup_norm;
  rep.surface_equation = E.sup_norm / std::max(1.0, lambda_ref);

  rep.gauge_alternate = p.p_atm == 0.0 ? 101325.0 : 0.0;
  const PhysicalParams alt = p.with_p_atm(rep.gauge_alternate);
  const SurfaceEquationEvaluation E_alt = surface_equation_residual(v, c.S0, c.Q, alt);
  rep.gauge_defect = relative_change(E.samples, E_alt.samples, lambda_ref);
  const ResidualEvaluation F = evaluate_residual(point.state(), p);
  const ResidualEvaluation F_alt = evaluate_residual(point.state(), alt);
  rep.residual_gauge_defect =
      relative_change(F.samples, F_alt.samples, lambda_ref / (p.k * p.k));

  // (d) graph and map margins.
  try {
    const SurfaceCurve curve = surface_curve(point, p, field.a, mx);
    rep.min_height = *std::min_element(curve.Y.begin(), curve.Y.end());
    rep.min_abscissa_step = INFINITY;
    const double period = 2.0 * std::numbers::pi / p.k;
    for (int j = 0; j < mx; ++j) {
      const double next = j + 1 < mx ? curve.X[j + 1] : curve.X[0] + period;
      rep.min_abscissa_step = std::min(rep.min_abscissa_step, next - curve.X[j]);
    }
  } catch (const InadmissibleIterate& e) {
    rep.failures.push_back(std::string("graph: ") + e.what());
  }
  {
    const double d = p.depth();
    const PeriodicFunction w0 = point.w.with_mean(0.0);
    using K = StripHarmonic::Kind;
    const auto Ux = harmonic_field(w0, d, mx, my, K::conjugate, Component::dx);
    const auto Uy = harmonic_field(w0, d, mx, my, K::conjugate, Component::dy);
    const auto Vx = harmonic_field(w0 + p.h, d, mx, my, K::extension, Component::dx);
    const auto Vy = harmonic_field(w0 + p.h, d, mx, my, K::extension, Component::dy);
    rep.min_jacobian = INFINITY;
    for (std::size_t i = 0; i < Ux.values().size(); ++i) {
      const double jac = (1.0 / p.k + Ux.values()[i]) * Vy.values()[i] - Uy.values()[i] * Vx.values()[i];
      rep.min_jacobian = std::min(rep.min_jacobian, jac);
    }
  }

  if (!rep.harmonicity.passed) rep.failures.push_back("harmonicity refinement ratio outside 4 +- 1");
  if (!rep.flow_force_pde.passed) rep.failures.push_back("flow-force PDE audit order below 1");
  if (!(rep.bed_trace < th.trace)) rep.failures.push_back("bed trace of S exceeds tolerance");
  if (!(rep.surface_trace < th.trace)) rep.failures.push_back("surface trace of S - S0 exceeds tolerance");
  if (!(rep.surface_equation < th.surface_equation)) {
    rep.failures.push_back("surface-equation residual exceeds tolerance");
  }
  if (!(rep.min_height > 0.0)) rep.failures.push_back("surface touches bed");
  if (!(rep.min_abscissa_step > 0.0)) rep.failures.push_back("surface abscissa not increasing");
  if (!(rep.min_jacobian > 0.0)) rep.failures.push_back("conformal Jacobian not positive");
  if (!(rep.gauge_defect < th.gauge)) rep.failures.push_back("surface equation depends on P_atm");
  if (!(rep.residual_gauge_defect < th.gauge)) rep.failures.push_back("residual depends on P_atm");
  rep.passed = rep.failures.empty();
  return rep;
}

}  // namespace cgwave
