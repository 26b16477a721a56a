#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version picked at runtime. The variants evaluate the same
// IEEE operations in the same order (no FMA contraction), so their outputs are
// bitwise identical.

#include <cstddef>
#include <span>
#include <string_view>

namespace cgwave::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Per-node inputs of the surface-geometry kernel.
struct GeometryIn {
  std::span<const double> wp;    // w'
  std::span<const double> wpp;   // w''
  std::span<const double> G;     // 1/k + C(w')
  std::span<const double> Cwpp;  // C(w'')
};

/// metric = w'^2 + G^2, root = sqrt(metric),
/// curvature = (G w'' - w' C(w'')) / metric^{3/2}.
struct GeometryOut {
  std::span<double> metric;
  std::span<double> root;
  std::span<double> curvature;
};

struct AssembleIn {
  std::span<const double> w;
  std::span<const double> wp;
  std::span<const double> G;
  std::span<const double> metric;
  std::span<const double> curvature;
  std::span<const double> B;
  double lambda_plus_mu;
  double sigma;
  double g;
  double p_atm;
};

/// residual = quotient + D - (lambda + mu + 2 sigma T - 2 g w) metric, with
/// D the quotient denominator, which is also returned for the singularity guard.
struct AssembleOut {
  std::span<double> residual;
  std::span<double> denominator;
};

struct KernelTable {
  Isa isa;
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// Five-point Laplacian on a rows x cols row-major grid, periodic in the
  /// column direction. Writes rows 1..rows-2; rows 0 and rows-1 are untouched.
  void (*laplacian5)(const double* f, double* out, std::size_t rows,
                     std::size_t cols, double dx, double dy);
  void (*surface_geometry)(const GeometryIn& in, const GeometryOut& out);
  void (*assemble_residual)(const AssembleIn& in, const AssembleOut& out);
};

/// True when the running CPU can execute `isa`.
bool supported(Isa isa);

/// Table for a specific instruction set; throws if unsupported.
const KernelTable& table(Isa isa);

/// Table used by the library. Chosen once: the best supported ISA, unless
/// the environment variable CGWAVE_SIMD=scalar forces the reference kernels.
const KernelTable& active();

namespace detail {
extern const KernelTable scalar_table;
#if defined(CGWAVE_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace cgwave::kernels
