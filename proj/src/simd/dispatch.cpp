#include <cstdlib>
#include <string>

#include "gpgraph/simd.hpp"
#include "gpgraph/types.hpp"

namespace gpgraph::simd {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::axpy, &scalar::dot};
#if defined(GPGRAPH_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::axpy, &avx2::dot};
#endif
#if defined(GPGRAPH_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, &neon::axpy, &neon::dot};
#endif

Isa select_isa() {
  if (const char* forced = std::getenv("GPGRAPH_SIMD")) {
    const std::string name(forced);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (name == isa_name(isa) && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(GPGRAPH_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(GPGRAPH_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw ConfigError("SIMD variant '" + std::string(isa_name(isa)) + "' is not available on this machine");
  }
  switch (isa) {
#if defined(GPGRAPH_HAVE_AVX2)
    case Isa::Avx2: return kAvx2;
#endif
#if defined(GPGRAPH_HAVE_NEON)
    case Isa::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = kernels_for(active_isa());
  return table;
}

}  // namespace gpgraph::simd
