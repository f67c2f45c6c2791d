#include "efield/simd/kernels.hpp"

#include <cmath>

namespace efield::simd {
namespace {

void diff(double* out, const double* a, const double* b, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] - b[i]) * c;
}

void one_sided(double* out, const double* f0, const double* f1, const double* f2, double c,
               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d01 = f1[i] - f0[i];
    const double d12 = f2[i] - f1[i];
    out[i] = (3.0 * d01 - d12) * c;
  }
}

void second_diff_acc(double* out, const double* fp, const double* f0, const double* fm,
                     double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double up = fp[i] - f0[i];
    const double down = f0[i] - fm[i];
    out[i] = out[i] + (up - down) * c;
  }
}

void one_sided2_acc(double* out, const double* f0, const double* f1, const double* f2,
                    const double* f3, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d01 = f0[i] - f1[i];
    const double d12 = f1[i] - f2[i];
    const double d23 = f2[i] - f3[i];
    out[i] = out[i] + ((2.0 * d01 - 3.0 * d12) + d23) * c;
  }
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_acc(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + a[i] * b[i];
}

void scaled_mul(double* out, double alpha, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * (a[i] * b[i]);
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void add_scaled(double* out, const double* x, double alpha, const double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + alpha * y[i];
}

void safe_div(double* out, const double* num, const double* den, double eps, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = den[i] > eps ? num[i] / den[i] : 0.0;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

bool all_finite(const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels table{Isa::scalar, "scalar", diff,    one_sided,  second_diff_acc,
                             one_sided2_acc, mul,   mul_acc, scaled_mul, axpy,
                             add_scaled,     safe_div, max_abs, all_finite};
  return table;
}

}  // namespace efield::simd
