#include <cstdlib>
#include <string_view>

#include "efield/simd/kernels.hpp"

namespace efield::simd {

#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2_kernels();
#endif
#if defined(__aarch64__)
const Kernels& neon_kernels();
#endif

const Kernels* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &scalar_kernels();
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (__builtin_cpu_supports("avx2")) return &avx2_kernels();
#endif
      return nullptr;
    case Isa::neon:
#if defined(__aarch64__)
      return &neon_kernels();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

namespace {

const Kernels& select() {
  if (const char* forced = std::getenv("EFIELD_SIMD")) {
    const std::string_view want{forced};
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      const Kernels* k = kernels_for(isa);
      if (k != nullptr && want == k->name) return *k;
    }
  }
  for (Isa isa : {Isa::avx2, Isa::neon})
    if (const Kernels* k = kernels_for(isa)) return *k;
  return scalar_kernels();
}

}  // namespace

const Kernels& kernels() {
  static const Kernels& active = select();
  return active;
}

}  // namespace efield::simd
