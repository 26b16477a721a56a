#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "cgwave/kernels.hpp"
#include "doctest.h"

using namespace cgwave::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Sizes that exercise both the vector body and the scalar tail.
constexpr std::size_t kSizes[] = {1, 3, 4, 7, 64, 130};

}  // namespace

TEST_CASE("dispatch reports a usable table") {
  const KernelTable& t = active();
  CHECK(supported(t.isa));
  CHECK(supported(Isa::scalar));
  CHECK(table(Isa::scalar).isa == Isa::scalar);
  CHECK(isa_name(Isa::avx2) == "avx2");
}

TEST_CASE("scalar kernels against plain formulas") {
  const KernelTable& s = table(Isa::scalar);
  std::vector<double> x{1.0, 2.0, 3.0}, y{1.0, 1.0, 1.0};
  s.axpy(2.0, x.data(), y.data(), 3);
  CHECK(y == std::vector<double>{3.0, 5.0, 7.0});

  std::vector<double> wp{0.0, 0.5}, wpp{1.0, -1.0}, G{0.1, 0.2}, Cwpp{0.3, 0.0};
  std::vector<double> metric(2), root(2), curv(2);
  s.surface_geometry({wp, wpp, G, Cwpp}, {metric, root, curv});
  CHECK(metric[1] == doctest::Approx(0.25 + 0.04));
  CHECK(root[1] == doctest::Approx(std::sqrt(0.29)));
  CHECK(curv[0] == doctest::Approx(0.1 / std::pow(0.01, 1.5)));
  CHECK(curv[1] == doctest::Approx(-0.2 / std::pow(0.29, 1.5)));
}

TEST_CASE("AVX2 kernels are bitwise identical to the scalar reference") {
  if (!supported(Isa::avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  const KernelTable& s = table(Isa::scalar);
  const KernelTable& v = table(Isa::avx2);
  std::mt19937_64 rng(20241015);

  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto x = random_vector(rng, n, -1.0, 1.0);
    auto y1 = random_vector(rng, n, -1.0, 1.0);
    auto y2 = y1;
    s.axpy(0.37, x.data(), y1.data(), n);
    v.axpy(0.37, x.data(), y2.data(), n);
    CHECK(bitwise_equal(y1, y2));

    const auto wp = random_vector(rng, n, -0.5, 0.5);
    const auto wpp = random_vector(rng, n, -3.0, 3.0);
    const auto G = random_vector(rng, n, 0.05, 0.2);
    const auto Cwpp = random_vector(rng, n, -3.0, 3.0);
    std::vector<double> m1(n), r1(n), c1(n), m2(n), r2(n), c2(n);
    s.surface_geometry({wp, wpp, G, Cwpp}, {m1, r1, c1});
    v.surface_geometry({wp, wpp, G, Cwpp}, {m2, r2, c2});
    CHECK(bitwise_equal(m1, m2));
    CHECK(bitwise_equal(r1, r2));
    CHECK(bitwise_equal(c1, c2));

    const auto w = random_vector(rng, n, -0.01, 0.01);
    const auto B = random_vector(rng, n, 0.1, 0.2);
    std::vector<double> res1(n), den1(n), res2(n), den2(n);
    const AssembleIn in{w, wp, G, m1, c1, B, 1.31, 0.073, 9.81, 101325.0};
    s.assemble_residual(in, {res1, den1});
    v.assemble_residual(in, {res2, den2});
    CHECK(bitwise_equal(res1, res2));
    CHECK(bitwise_equal(den1, den2));
  }

  for (std::size_t cols : {5u, 8u, 33u}) {
    CAPTURE(cols);
    const std::size_t rows = 6;
    const auto f = random_vector(rng, rows * cols, -1.0, 1.0);
    std::vector<double> o1(rows * cols, 0.0), o2(rows * cols, 0.0);
    s.laplacian5(f.data(), o1.data(), rows, cols, 0.1, 0.05);
    v.laplacian5(f.data(), o2.data(), rows, cols, 0.1, 0.05);
    CHECK(bitwise_equal(o1, o2));
  }
}

TEST_CASE("laplacian5 of a quadratic is exact") {
  const KernelTable& s = active();
  const std::size_t rows = 5, cols = 8;
  const double dx = 0.25, dy = 0.1;
  std::vector<double> f(rows * cols), out(rows * cols, -7.0);
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t j = 0; j < cols; ++j) f[m * cols + j] = 3.0 * (m * dy) * (m * dy);
  }
  s.laplacian5(f.data(), out.data(), rows, cols, dx, dy);
  for (std::size_t m = 1; m + 1 < rows; ++m) {
    for (std::size_t j = 0; j < cols; ++j) CHECK(out[m * cols + j] == doctest::Approx(6.0));
  }
  CHECK(out[0] == -7.0);
  CHECK(out[(rows - 1) * cols] == -7.0);
}
