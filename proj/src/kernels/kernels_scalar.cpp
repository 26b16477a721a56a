#include "cgwave/kernels.hpp"

#include <cmath>

namespace cgwave::kernels {
namespace {

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void laplacian5(const double* f, double* out, std::size_t rows,
                std::size_t cols, double dx, double dy) {
  const double idx2 = 1.0 / (dx * dx);
  const double idy2 = 1.0 / (dy * dy);
  for (std::size_t m = 1; m + 1 < rows; ++m) {
    const double* row = f + m * cols;
    const double* up = row + cols;
    const double* down = row - cols;
    double* o = out + m * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t jl = (j == 0) ? cols - 1 : j - 1;
      const std::size_t jr = (j + 1 == cols) ? 0 : j + 1;
      const double c2 = 2.0 * row[j];
      const double lx = (row[jl] + row[jr]) - c2;
      const double ly = (down[j] + up[j]) - c2;
      o[j] = lx * idx2 + ly * idy2;
    }
  }
}

void surface_geometry(const GeometryIn& in, const GeometryOut& out) {
  const std::size_t n = in.wp.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double m = in.wp[i] * in.wp[i] + in.G[i] * in.G[i];
    const double r = std::sqrt(m);
    const double num = in.G[i] * in.wpp[i] - in.wp[i] * in.Cwpp[i];
    out.metric[i] = m;
    out.root[i] = r;
    out.curvature[i] = num / (m * r);
  }
}

void assemble_residual(const AssembleIn& in, const AssembleOut& out) {
  const std::size_t n = in.w.size();
  const double two_g = 2.0 * in.g;
  for (std::size_t i = 0; i < n; ++i) {
    const double wp = in.wp[i];
    const double G = in.G[i];
    const double m = in.metric[i];
    const double B = in.B[i];
    const double st = in.sigma * in.curvature[i];
    const double A = in.p_atm * wp - (in.sigma * wp) * in.curvature[i];
    const double D = (A * wp + B * G) - (in.p_atm - st) * m;
    const double num = A * G - B * wp;
    const double quotient = (num * num) / D;
    const double bernoulli = (in.lambda_plus_mu + 2.0 * st) - two_g * in.w[i];
    out.denominator[i] = D;
    out.residual[i] = (quotient + D) - bernoulli * m;
  }
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::scalar, &axpy, &laplacian5,
                               &surface_geometry, &assemble_residual};
}  // namespace detail

}  // namespace cgwave::kernels
