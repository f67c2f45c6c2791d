// Built with -mavx2 only (no FMA), so every lane rounds like the scalar loop.
// This translation unit deliberately includes no standard headers with
// inline functions, which would otherwise be emitted with AVX2 encodings.

#include <immintrin.h>

#include "efield/simd/kernels.hpp"

namespace efield::simd {
namespace {

constexpr std::size_t kLanes = 4;

void diff(double* out, const double* a, const double* b, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vc));
  }
  for (; i < n; ++i) out[i] = (a[i] - b[i]) * c;
}

void one_sided(double* out, const double* f0, const double* f1, const double* f2, double c,
               std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d three = _mm256_set1_pd(3.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d x0 = _mm256_loadu_pd(f0 + i);
    const __m256d x1 = _mm256_loadu_pd(f1 + i);
    const __m256d x2 = _mm256_loadu_pd(f2 + i);
    const __m256d d01 = _mm256_sub_pd(x1, x0);
    const __m256d d12 = _mm256_sub_pd(x2, x1);
    const __m256d r = _mm256_sub_pd(_mm256_mul_pd(three, d01), d12);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(r, vc));
  }
  for (; i < n; ++i) {
    const double d01 = f1[i] - f0[i];
    const double d12 = f2[i] - f1[i];
    out[i] = (3.0 * d01 - d12) * c;
  }
}

void second_diff_acc(double* out, const double* fp, const double* f0, const double* fm,
                     double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d x0 = _mm256_loadu_pd(f0 + i);
    const __m256d up = _mm256_sub_pd(_mm256_loadu_pd(fp + i), x0);
    const __m256d down = _mm256_sub_pd(x0, _mm256_loadu_pd(fm + i));
    const __m256d r = _mm256_mul_pd(_mm256_sub_pd(up, down), vc);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), r));
  }
  for (; i < n; ++i) {
    const double up = fp[i] - f0[i];
    const double down = f0[i] - fm[i];
    out[i] = out[i] + (up - down) * c;
  }
}

void one_sided2_acc(double* out, const double* f0, const double* f1, const double* f2,
                    const double* f3, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d three = _mm256_set1_pd(3.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d x0 = _mm256_loadu_pd(f0 + i);
    const __m256d x1 = _mm256_loadu_pd(f1 + i);
    const __m256d x2 = _mm256_loadu_pd(f2 + i);
    const __m256d x3 = _mm256_loadu_pd(f3 + i);
    const __m256d d01 = _mm256_sub_pd(x0, x1);
    const __m256d d12 = _mm256_sub_pd(x1, x2);
    const __m256d d23 = _mm256_sub_pd(x2, x3);
    const __m256d s = _mm256_add_pd(
        _mm256_sub_pd(_mm256_mul_pd(two, d01), _mm256_mul_pd(three, d12)), d23);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_mul_pd(s, vc)));
  }
  for (; i < n; ++i) {
    const double d01 = f0[i] - f1[i];
    const double d12 = f1[i] - f2[i];
    const double d23 = f2[i] - f3[i];
    out[i] = out[i] + ((2.0 * d01 - 3.0 * d12) + d23) * c;
  }
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_acc(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), p));
  }
  for (; i < n; ++i) out[i] = out[i] + a[i] * b[i];
}

void scaled_mul(double* out, double alpha, const double* a, const double* b, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(va, p));
  }
  for (; i < n; ++i) out[i] = alpha * (a[i] * b[i]);
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), p));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void add_scaled(double* out, const double* x, double alpha, const double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i), p));
  }
  for (; i < n; ++i) out[i] = x[i] + alpha * y[i];
}

void safe_div(double* out, const double* num, const double* den, double eps, std::size_t n) {
  const __m256d ve = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d d = _mm256_loadu_pd(den + i);
    const __m256d mask = _mm256_cmp_pd(d, ve, _CMP_GT_OQ);
    const __m256d q = _mm256_div_pd(_mm256_loadu_pd(num + i), d);
    _mm256_storeu_pd(out + i, _mm256_and_pd(mask, q));
  }
  for (; i < n; ++i) out[i] = den[i] > eps ? num[i] / den[i] : 0.0;
}

double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  double m = 0.0;
  for (double v : lanes)
    if (v > m) m = v;
  for (; i < n; ++i) {
    const double a = x[i] < 0.0 ? -x[i] : x[i];
    if (a > m) m = a;
  }
  return m;
}

bool all_finite(const double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x + i);
    // x - x is 0 for finite x and NaN for inf/NaN.
    const __m256d ok = _mm256_cmp_pd(_mm256_sub_pd(v, v), zero, _CMP_EQ_OQ);
    if (_mm256_movemask_pd(ok) != 0xF) return false;
  }
  for (; i < n; ++i)
    if (!(x[i] - x[i] == 0.0)) return false;
  return true;
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels table{Isa::avx2,     "avx2",   diff,    one_sided,  second_diff_acc,
                             one_sided2_acc, mul,     mul_acc, scaled_mul, axpy,
                             add_scaled,     safe_div, max_abs, all_finite};
  return table;
}

}  // namespace efield::simd
