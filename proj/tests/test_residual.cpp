#include <cmath>
#include <vector>

#include "cgwave/errors.hpp"
#include "cgwave/residual.hpp"
#include "cgwave/strip.hpp"
#include "doctest.h"

using namespace cgwave;

namespace {

const PhysicalParams kWater{9.81, 0.073, 0.1, 10.0, 0.0};

double coth(double x) { return std::cosh(x) / std::sinh(x); }

// Closed-form first bifurcation value, written out independently of the library.
double lambda_star_closed(const PhysicalParams& p) {
  return (p.sigma * p.k + p.g / p.k) * std::tanh(p.k * p.h);
}

PeriodicFunction cos_profile(double s, int n = 16) { return PeriodicFunction::cosine(1, s, n); }

// A generic even zero-mean profile with a few harmonics.
PeriodicFunction rich_profile(double s, int n = 16) {
  std::vector<double> a(n + 1, 0.0);
  a[1] = s;
  a[2] = -0.4 * s;
  a[3] = 0.1 * s;
  return PeriodicFunction(a, {});
}

double sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("coefficient A") {
  CHECK(coeff_A(PeriodicFunction::zero(8), kWater).coefficient_sup() == 0.0);

  const auto A = coeff_A(cos_profile(1e-3), kWater);
  for (int n = 0; n <= A.modes(); ++n) CHECK(std::abs(A.a(n)) < 1e-15);
  CHECK(std::abs(A.b(2)) > 1e-7);

  PhysicalParams grav = kWater;
  grav.sigma = 0.0;
  grav.p_atm = 3.0;
  const auto Ag = coeff_A(cos_profile(1e-3), grav);
  CHECK(Ag.b(1) == doctest::Approx(-3.0 * 1e-3).epsilon(1e-13));
  for (int n = 2; n <= Ag.modes(); ++n) CHECK(std::abs(Ag.b(n)) < 1e-15);
}

TEST_CASE("coefficient B: trivial state and parity") {
  for (double patm : {0.0, 5.0}) {
    const auto p = kWater.with_p_atm(patm);
    const auto B = coeff_B(PeriodicFunction::zero(8), 1.5, p);
    CHECK(B.mean() == doctest::Approx(1.5 / p.k + patm / p.k).epsilon(1e-15));
    for (int n = 1; n <= B.modes(); ++n) CHECK(std::abs(B.a(n)) < 1e-15);
  }
  const auto B = coeff_B(rich_profile(2e-3), 1.3, kWater);
  CHECK(B.parity() == Parity::even);
}

TEST_CASE("coefficient B: first-order term against a finite difference in s") {
  // Linear part of B in s at w = s cos x: (-g/k + P_atm coth(kh)) cos x; the
  // sigma terms and the remaining g terms are quadratic in w.
  for (double patm : {0.0, 101325.0}) {
    CAPTURE(patm);
    const auto p = kWater.with_p_atm(patm);
    const double s = 1e-6;
    const auto plus = coeff_B(cos_profile(s), 1.3, p);
    const auto minus = coeff_B(cos_profile(-s), 1.3, p);
    const double fd = (plus.a(1) - minus.a(1)) / (2 * s);
    const double expect = -p.g / p.k + patm * coth(p.k * p.h);
    CHECK(fd == doctest::Approx(expect).epsilon(1e-6));
    CHECK(std::abs((plus.a(2) - minus.a(2)) / (2 * s)) < 1e-6 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("residual at the trivial state") {
  for (double lambda : {0.5, 1.3, 7.0}) {
    const auto r = residual({lambda, 0.0, PeriodicFunction::zero(16)}, kWater);
    CHECK(r.coefficient_sup() < 1e-15);
  }
  for (double mu : {-0.3, 1e-4, 2.5}) {
    const auto e = evaluate_residual({1.3, mu, PeriodicFunction::zero(16)}, kWater);
    const double expect = -mu / (kWater.k * kWater.k);
    for (double v : e.samples) {
      CHECK(std::abs(v - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("residual at w = 0 does not depend on N or M") {
  const double expect = -0.3 / (kWater.k * kWater.k);
  for (int n : {4, 16, 64}) {
    for (int m : {0, 8 * n + 2}) {
      const auto w = PeriodicFunction::zero(n, m);
      const auto r = residual({1.3, 0.3, w}, kWater);
      CHECK(std::abs(r.mean() - expect) < 1e-15);
    }
  }
}

TEST_CASE("residual is unchanged by the atmospheric pressure constant") {
  const TrialState st{1.31, 2e-4, rich_profile(3e-3, 24)};
  const auto base = evaluate_residual(st, kWater);
  for (double c : {1.0, 101325.0}) {
    const auto other = evaluate_residual(st, kWater.with_p_atm(c));
    double diff = 0.0;
    for (std::size_t j = 0; j < base.samples.size(); ++j) {
      diff = std::max(diff, std::abs(other.samples[j] - base.samples[j]));
    }
    CHECK(diff <= 1e-9 * std::max(base.sup_norm, lambda_star_closed(kWater) / 100.0));
  }
}

TEST_CASE("residual of an even state is even") {
  const auto e = evaluate_residual({1.3, 1e-4, rich_profile(5e-3, 24)}, kWater);
  CHECK(e.function.parity() == Parity::even);
  CHECK(e.sine_sup < 1e-12 * std::max(e.function.coefficient_sup(), 1e-2));
}

TEST_CASE("residual guards") {
  CHECK_THROWS_AS(evaluate_residual({0.0, 0.0, PeriodicFunction::zero(8)}, kWater),
                  SingularExpression);
  const PeriodicFunction shifted({1e-3, 1e-3}, {});
  CHECK_THROWS_AS(evaluate_residual({1.3, 0.0, shifted}, kWater), MeanNotZero);
  PhysicalParams bad = kWater;
  bad.h = -1.0;
  CHECK_THROWS_AS(residual({1.3, 0.0, PeriodicFunction::zero(4)}, bad), std::invalid_argument);
}

TEST_CASE("linearization symbol") {
  const double ls = lambda_star_closed(kWater);
  CHECK(std::abs(linearization_symbol(ls, 1, kWater)) < 1e-14);

  PhysicalParams grav = kWater;
  grav.sigma = 0.0;
  for (int n : {1, 2, 7}) {
    CHECK(linearization_symbol(0.0, n, grav) == doctest::Approx(grav.g / 100.0).epsilon(1e-15));
  }
  const double m2 = -(1.0 / 100.0) * (1.5 * 20.0 * coth(2.0) - 0.073 * 100.0 * 4.0 - 9.81);
  CHECK(linearization_symbol(1.5, 2, kWater) == doctest::Approx(m2).epsilon(1e-14));
}

TEST_CASE("finite-difference Jacobian at the trivial state is Fourier diagonal") {
  const int n = 12;
  const double lambda = 1.5;
  const auto J = jacobian_fd({lambda, 0.0, PeriodicFunction::zero(n)}, kWater,
                             UnknownSelector::all(n));
  REQUIRE(J.rows() == n + 1);
  REQUIRE(J.cols() == n + 2);
  const double k2 = kWater.k * kWater.k;
  CHECK(J(0, 1) == doctest::Approx(-1.0 / k2).epsilon(1e-5));
  for (int i = 1; i <= n; ++i) {
    const double mi = -(1.0 / k2) * (lambda * kWater.k * i * coth(i * kWater.k * kWater.h) -
                                     kWater.sigma * k2 * i * i - kWater.g);
    CHECK(J(i, i + 1) == doctest::Approx(mi).epsilon(1e-5));
  }
  double off = 0.0;
  for (int r = 0; r <= n; ++r) {
    for (int c = 1; c < n + 2; ++c) {
      if (c != r + 1) off = std::max(off, std::abs(J(r, c)));
    }
    off = std::max(off, std::abs(J(r, 0)));
  }
  CHECK(off < 1e-6 / k2);
}

TEST_CASE("Jacobian at the bifurcation point") {
  const int n = 8;
  const double ls = lambda_star_closed(kWater);
  const auto J = jacobian_fd({ls, 0.0, PeriodicFunction::zero(n)}, kWater, UnknownSelector::all(n));
  CHECK(J.col(2).cwiseAbs().maxCoeff() < 1e-6);

  const double s = 1e-3;
  const auto Jl = jacobian_fd({ls, 0.0, PeriodicFunction::cosine(1, s, n)}, kWater,
                              UnknownSelector::all(n));
  const double expect = -(1.0 / kWater.k) * coth(kWater.k * kWater.h) * s;
  CHECK(Jl(1, 0) == doctest::Approx(expect).epsilon(1e-2));

  const auto frozen = UnknownSelector::amplitude_frozen(n);
  CHECK(frozen.size() == n + 1);
  CHECK(frozen.modes.front() == 2);
}

TEST_CASE("admissibility") {
  const auto r0 = check_admissibility(PeriodicFunction::zero(8), kWater);
  CHECK(r0.passed);
  CHECK(r0.min_metric == doctest::Approx(1.0 / (kWater.k * kWater.k)).epsilon(1e-15));
  CHECK(r0.min_height == doctest::Approx(kWater.h));

  const auto bed = check_admissibility(PeriodicFunction::cosine(1, -2.0 * kWater.h, 8), kWater);
  CHECK_FALSE(bed.passed);
  REQUIRE_FALSE(bed.failures.empty());
  CHECK(bed.failures.front() == "surface touches bed");

  CHECK(check_admissibility(cos_profile(1e-3), kWater).passed);

  const auto mean = check_admissibility(PeriodicFunction({1e-3, 1e-3}, {}), kWater);
  CHECK_FALSE(mean.passed);
  CHECK(mean.failures.front() == "elevation has nonzero mean");
}

TEST_CASE("surface equation in v equals the residual divided by the metric") {
  const double lambda = 1.29, mu = 3e-4;
  const auto w = rich_profile(4e-3, 24);
  const auto e = evaluate_residual({lambda, mu, w}, kWater);

  const double h = kWater.h, g = kWater.g;
  const double S0 = h * (lambda + g * h / 2.0);
  const double Q = mu + 2.0 * g * h + lambda;
  const auto E = surface_equation_residual(w + h, S0, Q, kWater);

  const StripParams strip(kWater.k * h);
  const auto wp = derivative(w);
  const auto G = hilbert_strip(wp, strip) + 1.0 / kWater.k;
  const auto wps = wp.sample(static_cast<int>(e.samples.size()));
  const auto Gs = G.sample(static_cast<int>(e.samples.size()));
  REQUIRE(E.samples.size() == e.samples.size());
  std::vector<double> diff(e.samples.size());
  for (std::size_t j = 0; j < diff.size(); ++j) {
    const double metric = wps[j] * wps[j] + Gs[j] * Gs[j];
    diff[j] = E.samples[j] * metric - e.samples[j];
  }
  CHECK(sup(diff) < 1e-10 * std::max(sup(e.samples), lambda / 100.0));
  CHECK(E.sup_norm > 0.0);
}
