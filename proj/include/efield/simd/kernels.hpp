#pragma once

// Data-parallel inner loops used by the grid operators and the time
// integrators. Every variant performs the same IEEE operations in the same
// order as the scalar reference, so results are bit-identical across ISAs.

#include <cstddef>

namespace efield::simd {

enum class Isa { scalar, avx2, neon };

struct Kernels {
  Isa isa;
  const char* name;

  // out = (a - b) * c
  void (*diff)(double* out, const double* a, const double* b, double c, std::size_t n);
  // out = (3 (f1 - f0) - (f2 - f1)) * c; second-order one-sided first derivative.
  void (*one_sided)(double* out, const double* f0, const double* f1, const double* f2,
                    double c, std::size_t n);
  // out += ((fp - f0) - (f0 - fm)) * c
  void (*second_diff_acc)(double* out, const double* fp, const double* f0, const double* fm,
                          double c, std::size_t n);
  // out += (2 (f0 - f1) - 3 (f1 - f2) + (f2 - f3)) * c
  void (*one_sided2_acc)(double* out, const double* f0, const double* f1, const double* f2,
                         const double* f3, double c, std::size_t n);
  // out = a * b
  void (*mul)(double* out, const double* a, const double* b, std::size_t n);
  // out += a * b
  void (*mul_acc)(double* out, const double* a, const double* b, std::size_t n);
  // out = alpha * (a * b)
  void (*scaled_mul)(double* out, double alpha, const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double* y, double alpha, const double* x, std::size_t n);
  // out = x + alpha * y
  void (*add_scaled)(double* out, const double* x, double alpha, const double* y, std::size_t n);
  // out = den > eps ? num / den : 0
  void (*safe_div)(double* out, const double* num, const double* den, double eps, std::size_t n);
  // max |x|; input must be finite.
  double (*max_abs)(const double* x, std::size_t n);
  bool (*all_finite)(const double* x, std::size_t n);
};

const Kernels& scalar_kernels();

// nullptr when the variant is not compiled in or the CPU lacks the ISA.
const Kernels* kernels_for(Isa isa);

// Best available variant, chosen once per process. EFIELD_SIMD=scalar|avx2|neon
// forces a variant when it is available.
const Kernels& kernels();

}  // namespace efield::simd
