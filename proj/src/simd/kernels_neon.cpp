// AArch64 NEON variant. Relies on -ffp-contract=off so the compiler does not
// fuse the scalar tails (or the reference loop) into fmla.

#include <arm_neon.h>

#include "efield/simd/kernels.hpp"

namespace efield::simd {
namespace {

constexpr std::size_t kLanes = 2;

void diff(double* out, const double* a, const double* b, double c, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vst1q_f64(out + i, vmulq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)), vc));
  for (; i < n; ++i) out[i] = (a[i] - b[i]) * c;
}

void one_sided(double* out, const double* f0, const double* f1, const double* f2, double c,
               std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t three = vdupq_n_f64(3.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t x0 = vld1q_f64(f0 + i);
    const float64x2_t x1 = vld1q_f64(f1 + i);
    const float64x2_t x2 = vld1q_f64(f2 + i);
    const float64x2_t r = vsubq_f64(vmulq_f64(three, vsubq_f64(x1, x0)), vsubq_f64(x2, x1));
    vst1q_f64(out + i, vmulq_f64(r, vc));
  }
  for (; i < n; ++i) {
    const double d01 = f1[i] - f0[i];
    const double d12 = f2[i] - f1[i];
    out[i] = (3.0 * d01 - d12) * c;
  }
}

void second_diff_acc(double* out, const double* fp, const double* f0, const double* fm,
                     double c, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t x0 = vld1q_f64(f0 + i);
    const float64x2_t up = vsubq_f64(vld1q_f64(fp + i), x0);
    const float64x2_t down = vsubq_f64(x0, vld1q_f64(fm + i));
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i), vmulq_f64(vsubq_f64(up, down), vc)));
  }
  for (; i < n; ++i) {
    const double up = fp[i] - f0[i];
    const double down = f0[i] - fm[i];
    out[i] = out[i] + (up - down) * c;
  }
}

void one_sided2_acc(double* out, const double* f0, const double* f1, const double* f2,
                    const double* f3, double c, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t two = vdupq_n_f64(2.0);
  const float64x2_t three = vdupq_n_f64(3.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t x0 = vld1q_f64(f0 + i);
    const float64x2_t x1 = vld1q_f64(f1 + i);
    const float64x2_t x2 = vld1q_f64(f2 + i);
    const float64x2_t x3 = vld1q_f64(f3 + i);
    const float64x2_t s = vaddq_f64(
        vsubq_f64(vmulq_f64(two, vsubq_f64(x0, x1)), vmulq_f64(three, vsubq_f64(x1, x2))),
        vsubq_f64(x2, x3));
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i), vmulq_f64(s, vc)));
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
    vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_acc(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t p = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i), p));
  }
  for (; i < n; ++i) out[i] = out[i] + a[i] * b[i];
}

void scaled_mul(double* out, double alpha, const double* a, const double* b, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vst1q_f64(out + i, vmulq_f64(va, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i))));
  for (; i < n; ++i) out[i] = alpha * (a[i] * b[i]);
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void add_scaled(double* out, const double* x, double alpha, const double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(x + i), vmulq_f64(va, vld1q_f64(y + i))));
  for (; i < n; ++i) out[i] = x[i] + alpha * y[i];
}

void safe_div(double* out, const double* num, const double* den, double eps, std::size_t n) {
  const float64x2_t ve = vdupq_n_f64(eps);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t d = vld1q_f64(den + i);
    const uint64x2_t mask = vcgtq_f64(d, ve);
    const float64x2_t q = vdivq_f64(vld1q_f64(num + i), d);
    vst1q_f64(out + i, vbslq_f64(mask, q, zero));
  }
  for (; i < n; ++i) out[i] = den[i] > eps ? num[i] / den[i] : 0.0;
}

double max_abs(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
  double m = vmaxvq_f64(acc);
  for (; i < n; ++i) {
    const double a = x[i] < 0.0 ? -x[i] : x[i];
    if (a > m) m = a;
  }
  return m;
}

bool all_finite(const double* x, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t v = vld1q_f64(x + i);
    const uint64x2_t ok = vceqq_f64(vsubq_f64(v, v), zero);
    if (vminvq_u32(vreinterpretq_u32_u64(ok)) == 0) return false;
  }
  for (; i < n; ++i)
    if (!(x[i] - x[i] == 0.0)) return false;
  return true;
}

}  // namespace

const Kernels& neon_kernels() {
  static const Kernels table{Isa::neon,     "neon",   diff,    one_sided,  second_diff_acc,
                             one_sided2_acc, mul,     mul_acc, scaled_mul, axpy,
                             add_scaled,     safe_div, max_abs, all_finite};
  return table;
}

}  // namespace efield::simd
