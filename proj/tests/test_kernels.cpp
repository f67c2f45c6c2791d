#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "efield/simd/kernels.hpp"

using efield::simd::Isa;
using efield::simd::Kernels;

namespace {

std::vector<const Kernels*> simd_variants() {
  std::vector<const Kernels*> out;
  for (Isa isa : {Isa::avx2, Isa::neon})
    if (const Kernels* k = efield::simd::kernels_for(isa)) out.push_back(k);
  return out;
}

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

TEST_CASE("scalar kernels compute the documented formulas") {
  const Kernels& k = efield::simd::scalar_kernels();
  const std::vector<double> a{1.0, 4.0, -2.0};
  const std::vector<double> b{0.5, 1.0, 2.0};
  const std::vector<double> c{2.0, -1.0, 0.0};
  const std::vector<double> d{1.0, 1.0, 1.0};
  std::vector<double> out(3);

  k.diff(out.data(), a.data(), b.data(), 2.0, 3);
  CHECK(out == std::vector<double>{1.0, 6.0, -8.0});

  k.one_sided(out.data(), a.data(), b.data(), c.data(), 1.0, 3);
  // 3 (f1 - f0) - (f2 - f1)
  CHECK(out == std::vector<double>{-3.0, -7.0, 14.0});

  std::fill(out.begin(), out.end(), 1.0);
  k.second_diff_acc(out.data(), a.data(), b.data(), c.data(), 1.0, 3);
  CHECK(out == std::vector<double>{1.0 + (1.0 - 0.5) - (0.5 - 2.0), 1.0 + 3.0 - 2.0,
                                   1.0 + (-4.0) - 2.0});

  std::fill(out.begin(), out.end(), 0.0);
  k.one_sided2_acc(out.data(), a.data(), b.data(), c.data(), d.data(), 1.0, 3);
  CHECK(out[0] == doctest::Approx(2.0 * 0.5 - 3.0 * (0.5 - 2.0) + 1.0));

  k.scaled_mul(out.data(), 2.0, a.data(), b.data(), 3);
  CHECK(out == std::vector<double>{1.0, 8.0, -8.0});

  out = a;
  k.axpy(out.data(), -1.0, b.data(), 3);
  CHECK(out == std::vector<double>{0.5, 3.0, -4.0});

  k.add_scaled(out.data(), a.data(), 2.0, b.data(), 3);
  CHECK(out == std::vector<double>{2.0, 6.0, 2.0});

  const std::vector<double> den{1e-13, 2.0, -1.0};
  k.safe_div(out.data(), a.data(), den.data(), 1e-12, 3);
  CHECK(out == std::vector<double>{0.0, 2.0, 0.0});

  CHECK(k.max_abs(a.data(), 3) == 4.0);
  CHECK(k.max_abs(a.data(), 0) == 0.0);
  CHECK(k.all_finite(a.data(), 3));
  std::vector<double> bad = a;
  bad[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(k.all_finite(bad.data(), 3));
  bad[1] = INFINITY;
  CHECK_FALSE(k.all_finite(bad.data(), 3));
}

TEST_CASE("SIMD variants are bit-identical to the scalar reference") {
  const Kernels& ref = efield::simd::scalar_kernels();
  const auto variants = simd_variants();
  if (variants.empty()) MESSAGE("no SIMD variant available on this machine");
  std::mt19937_64 rng(12345);
  for (const Kernels* k : variants) {
    CAPTURE(k->name);
    for (std::size_t n = 0; n <= 37; ++n) {
      CAPTURE(n);
      const auto a = random_vec(n, rng);
      const auto b = random_vec(n, rng);
      const auto c = random_vec(n, rng);
      const auto d = random_vec(n, rng);
      auto den = random_vec(n, rng);
      for (std::size_t i = 0; i < n; i += 3) den[i] = 0.0;
      const double alpha = 0.3178;
      std::vector<double> x(n), y(n);

      ref.diff(x.data(), a.data(), b.data(), alpha, n);
      k->diff(y.data(), a.data(), b.data(), alpha, n);
      CHECK(same_bits(x, y));

      ref.one_sided(x.data(), a.data(), b.data(), c.data(), alpha, n);
      k->one_sided(y.data(), a.data(), b.data(), c.data(), alpha, n);
      CHECK(same_bits(x, y));

      x = d;
      y = d;
      ref.second_diff_acc(x.data(), a.data(), b.data(), c.data(), alpha, n);
      k->second_diff_acc(y.data(), a.data(), b.data(), c.data(), alpha, n);
      CHECK(same_bits(x, y));

      x = d;
      y = d;
      ref.one_sided2_acc(x.data(), a.data(), b.data(), c.data(), d.data(), alpha, n);
      k->one_sided2_acc(y.data(), a.data(), b.data(), c.data(), d.data(), alpha, n);
      CHECK(same_bits(x, y));

      ref.mul(x.data(), a.data(), b.data(), n);
      k->mul(y.data(), a.data(), b.data(), n);
      CHECK(same_bits(x, y));

      x = d;
      y = d;
      ref.mul_acc(x.data(), a.data(), b.data(), n);
      k->mul_acc(y.data(), a.data(), b.data(), n);
      CHECK(same_bits(x, y));

      ref.scaled_mul(x.data(), alpha, a.data(), b.data(), n);
      k->scaled_mul(y.data(), alpha, a.data(), b.data(), n);
      CHECK(same_bits(x, y));

      x = d;
      y = d;
      ref.axpy(x.data(), alpha, a.data(), n);
      k->axpy(y.data(), alpha, a.data(), n);
      CHECK(same_bits(x, y));

      ref.add_scaled(x.data(), a.data(), alpha, b.data(), n);
      k->add_scaled(y.data(), a.data(), alpha, b.data(), n);
      CHECK(same_bits(x, y));

      ref.safe_div(x.data(), a.data(), den.data(), 1e-12, n);
      k->safe_div(y.data(), a.data(), den.data(), 1e-12, n);
      CHECK(same_bits(x, y));

      CHECK(ref.max_abs(a.data(), n) == k->max_abs(a.data(), n));
      CHECK(ref.all_finite(a.data(), n) == k->all_finite(a.data(), n));
      if (n > 0) {
        auto bad = a;
        bad[n - 1] = std::numeric_limits<double>::quiet_NaN();
        CHECK_FALSE(k->all_finite(bad.data(), n));
        bad[n - 1] = -INFINITY;
        CHECK_FALSE(k->all_finite(bad.data(), n));
      }
    }
  }
}

TEST_CASE("dispatch returns a usable variant") {
  const Kernels& k = efield::simd::kernels();
  CHECK(k.name != nullptr);
  CHECK(efield::simd::kernels_for(Isa::scalar) == &efield::simd::scalar_kernels());
}
