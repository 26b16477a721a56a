#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cgwave/kernels.hpp"

namespace cgwave::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(CGWAVE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) {
    throw std::runtime_error("kernel ISA not supported on this CPU: " +
                             std::string(isa_name(isa)));
  }
#if defined(CGWAVE_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table;
#endif
  return detail::scalar_table;
}

namespace {

const KernelTable& choose() {
  if (const char* forced = std::getenv("CGWAVE_SIMD")) {
    if (std::string(forced) == "scalar") return detail::scalar_table;
  }
  if (supported(Isa::avx2)) return table(Isa::avx2);
  return detail::scalar_table;
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = choose();
  return chosen;
}

}  // namespace cgwave::kernels
