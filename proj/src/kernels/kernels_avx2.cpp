#include "cgwave/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace cgwave::kernels {
namespace {

constexpr std::size_t kLanes = 4;

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d yv = _mm256_loadu_pd(y + i);
    const __m256d xv = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(a, xv)));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

inline double stencil(const double* row, const double* up, const double* down,
                      std::size_t j, std::size_t jl, std::size_t jr,
                      double idx2, double idy2) {
  const double c2 = 2.0 * row[j];
  const double lx = (row[jl] + row[jr]) - c2;
  const double ly = (down[j] + up[j]) - c2;
  return lx * idx2 + ly * idy2;
}

void laplacian5(const double* f, double* out, std::size_t rows,
                std::size_t cols, double dx, double dy) {
  const double idx2 = 1.0 / (dx * dx);
  const double idy2 = 1.0 / (dy * dy);
  const __m256d vx = _mm256_set1_pd(idx2);
  const __m256d vy = _mm256_set1_pd(idy2);
  const __m256d two = _mm256_set1_pd(2.0);
  for (std::size_t m = 1; m + 1 < rows; ++m) {
    const double* row = f + m * cols;
    const double* up = row + cols;
    const double* down = row - cols;
    double* o = out + m * cols;
    if (cols < 3) {
      for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t jl = (j == 0) ? cols - 1 : j - 1;
        const std::size_t jr = (j + 1 == cols) ? 0 : j + 1;
        o[j] = stencil(row, up, down, j, jl, jr, idx2, idy2);
      }
      continue;
    }
    o[0] = stencil(row, up, down, 0, cols - 1, 1, idx2, idy2);
    std::size_t j = 1;
    for (; j + kLanes <= cols - 1; j += kLanes) {
      const __m256d c2 = _mm256_mul_pd(two, _mm256_loadu_pd(row + j));
      const __m256d lx = _mm256_sub_pd(
          _mm256_add_pd(_mm256_loadu_pd(row + j - 1), _mm256_loadu_pd(row + j + 1)), c2);
      const __m256d ly = _mm256_sub_pd(
          _mm256_add_pd(_mm256_loadu_pd(down + j), _mm256_loadu_pd(up + j)), c2);
      _mm256_storeu_pd(o + j, _mm256_add_pd(_mm256_mul_pd(lx, vx), _mm256_mul_pd(ly, vy)));
    }
    for (; j + 1 < cols; ++j) o[j] = stencil(row, up, down, j, j - 1, j + 1, idx2, idy2);
    o[cols - 1] = stencil(row, up, down, cols - 1, cols - 2, 0, idx2, idy2);
  }
}

void surface_geometry(const GeometryIn& in, const GeometryOut& out) {
  const std::size_t n = in.wp.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d wp = _mm256_loadu_pd(in.wp.data() + i);
    const __m256d wpp = _mm256_loadu_pd(in.wpp.data() + i);
    const __m256d G = _mm256_loadu_pd(in.G.data() + i);
    const __m256d Cwpp = _mm256_loadu_pd(in.Cwpp.data() + i);
    const __m256d m = _mm256_add_pd(_mm256_mul_pd(wp, wp), _mm256_mul_pd(G, G));
    const __m256d r = _mm256_sqrt_pd(m);
    const __m256d num = _mm256_sub_pd(_mm256_mul_pd(G, wpp), _mm256_mul_pd(wp, Cwpp));
    _mm256_storeu_pd(out.metric.data() + i, m);
    _mm256_storeu_pd(out.root.data() + i, r);
    _mm256_storeu_pd(out.curvature.data() + i, _mm256_div_pd(num, _mm256_mul_pd(m, r)));
  }
  for (; i < n; ++i) {
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
  const __m256d vsigma = _mm256_set1_pd(in.sigma);
  const __m256d vp = _mm256_set1_pd(in.p_atm);
  const __m256d vlm = _mm256_set1_pd(in.lambda_plus_mu);
  const __m256d v2g = _mm256_set1_pd(two_g);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d wp = _mm256_loadu_pd(in.wp.data() + i);
    const __m256d G = _mm256_loadu_pd(in.G.data() + i);
    const __m256d m = _mm256_loadu_pd(in.metric.data() + i);
    const __m256d B = _mm256_loadu_pd(in.B.data() + i);
    const __m256d T = _mm256_loadu_pd(in.curvature.data() + i);
    const __m256d w = _mm256_loadu_pd(in.w.data() + i);
    const __m256d st = _mm256_mul_pd(vsigma, T);
    const __m256d A = _mm256_sub_pd(_mm256_mul_pd(vp, wp),
                                    _mm256_mul_pd(_mm256_mul_pd(vsigma, wp), T));
    const __m256d D = _mm256_sub_pd(
        _mm256_add_pd(_mm256_mul_pd(A, wp), _mm256_mul_pd(B, G)),
        _mm256_mul_pd(_mm256_sub_pd(vp, st), m));
    const __m256d num = _mm256_sub_pd(_mm256_mul_pd(A, G), _mm256_mul_pd(B, wp));
    const __m256d quotient = _mm256_div_pd(_mm256_mul_pd(num, num), D);
    const __m256d bernoulli = _mm256_sub_pd(_mm256_add_pd(vlm, _mm256_mul_pd(two, st)),
                                            _mm256_mul_pd(v2g, w));
    _mm256_storeu_pd(out.denominator.data() + i, D);
    _mm256_storeu_pd(out.residual.data() + i,
                     _mm256_sub_pd(_mm256_add_pd(quotient, D), _mm256_mul_pd(bernoulli, m)));
  }
  for (; i < n; ++i) {
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
const KernelTable avx2_table{Isa::avx2, &axpy, &laplacian5, &surface_geometry,
                             &assemble_residual};
}  // namespace detail

}  // namespace cgwave::kernels
