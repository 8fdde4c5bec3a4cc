#include "ci/kernels.hpp"

#include <immintrin.h>

namespace ci::kernels {

namespace {
// Exactness bound for the double-precision path: with q < 2^25 every
// intermediate y + a*x is below 2^25 + 2^50 < 2^53.
constexpr u64 kAvx2MaxQ = u64(1) << 25;
}  // namespace

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

Impl active_impl(u64 q) {
  return (q < kAvx2MaxQ && avx2_available()) ? Impl::Avx2 : Impl::Scalar;
}

void axpy_mod_scalar(u64* y, const u64* x, std::size_t len, u64 a, u64 q) {
  a %= q;
  for (std::size_t i = 0; i < len; ++i) y[i] = (y[i] + a * x[i]) % q;
}

void scale_mod_scalar(u64* y, std::size_t len, u64 a, u64 q) {
  a %= q;
  for (std::size_t i = 0; i < len; ++i) y[i] = a * y[i] % q;
}

u64 dot_mod_scalar(const u64* x, const u64* y, std::size_t len, u64 q) {
  u64 acc = 0;
  for (std::size_t i = 0; i < len; ++i) acc = (acc + x[i] * y[i]) % q;
  return acc;
}

// ---- AVX2 variants ------------------------------------------------------
// Strategy: convert lanes to double, compute t, reduce with an estimated
// quotient floor(t/q) that can be off by one, then fix up.  All quantities
// stay below 2^53 so every double operation is exact.

__attribute__((target("avx2"))) static inline __m256d reduce_pd(__m256d t,
                                                                __m256d vq,
                                                                __m256d vinvq) {
  __m256d est = _mm256_floor_pd(_mm256_mul_pd(t, vinvq));
  __m256d r = _mm256_sub_pd(t, _mm256_mul_pd(est, vq));
  // r may land in (-q, 2q); two fixups bring it into [0, q).
  __m256d mask_neg = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
  r = _mm256_add_pd(r, _mm256_and_pd(mask_neg, vq));
  __m256d mask_ge = _mm256_cmp_pd(r, vq, _CMP_GE_OQ);
  r = _mm256_sub_pd(r, _mm256_and_pd(mask_ge, vq));
  return r;
}

__attribute__((target("avx2"))) static inline __m256d load_u64_as_pd(
    const u64* p) {
  // Values are < 2^25, so a simple per-lane convert is exact.
  return _mm256_set_pd(static_cast<double>(p[3]), static_cast<double>(p[2]),
                       static_cast<double>(p[1]), static_cast<double>(p[0]));
}

__attribute__((target("avx2"))) static inline void store_pd_as_u64(u64* p,
                                                                   __m256d v) {
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, v);
  p[0] = static_cast<u64>(tmp[0]);
  p[1] = static_cast<u64>(tmp[1]);
  p[2] = static_cast<u64>(tmp[2]);
  p[3] = static_cast<u64>(tmp[3]);
}

__attribute__((target("avx2"))) void axpy_mod_avx2(u64* y, const u64* x,
                                                   std::size_t len, u64 a,
                                                   u64 q) {
  a %= q;
  const __m256d vq = _mm256_set1_pd(static_cast<double>(q));
  const __m256d vinvq = _mm256_set1_pd(1.0 / static_cast<double>(q));
  const __m256d va = _mm256_set1_pd(static_cast<double>(a));
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d vy = load_u64_as_pd(y + i);
    __m256d vx = load_u64_as_pd(x + i);
    __m256d t = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
    store_pd_as_u64(y + i, reduce_pd(t, vq, vinvq));
  }
  for (; i < len; ++i) y[i] = (y[i] + a * x[i]) % q;
}

__attribute__((target("avx2"))) void scale_mod_avx2(u64* y, std::size_t len,
                                                    u64 a, u64 q) {
  a %= q;
  const __m256d vq = _mm256_set1_pd(static_cast<double>(q));
  const __m256d vinvq = _mm256_set1_pd(1.0 / static_cast<double>(q));
  const __m256d va = _mm256_set1_pd(static_cast<double>(a));
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d vy = load_u64_as_pd(y + i);
    store_pd_as_u64(y + i, reduce_pd(_mm256_mul_pd(va, vy), vq, vinvq));
  }
  for (; i < len; ++i) y[i] = a * y[i] % q;
}

__attribute__((target("avx2"))) u64 dot_mod_avx2(const u64* x, const u64* y,
                                                 std::size_t len, u64 q) {
  const __m256d vq = _mm256_set1_pd(static_cast<double>(q));
  const __m256d vinvq = _mm256_set1_pd(1.0 / static_cast<double>(q));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  std::size_t since_reduce = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d vx = load_u64_as_pd(x + i);
    __m256d vy = load_u64_as_pd(y + i);
    // Reduce each product immediately; the accumulator then grows by < q
    // per step, and we renormalize before it can reach 2^53.
    acc = _mm256_add_pd(acc, reduce_pd(_mm256_mul_pd(vx, vy), vq, vinvq));
    if (++since_reduce >= (std::size_t(1) << 26)) {
      acc = reduce_pd(acc, vq, vinvq);
      since_reduce = 0;
    }
  }
  acc = reduce_pd(acc, vq, vinvq);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  u64 r = 0;
  for (double v : lanes) r = (r + static_cast<u64>(v)) % q;
  for (; i < len; ++i) r = (r + x[i] * y[i]) % q;
  return r;
}

void axpy_mod(u64* y, const u64* x, std::size_t len, u64 a, u64 q) {
  if (active_impl(q) == Impl::Avx2)
    axpy_mod_avx2(y, x, len, a, q);
  else
    axpy_mod_scalar(y, x, len, a, q);
}

void scale_mod(u64* y, std::size_t len, u64 a, u64 q) {
  if (active_impl(q) == Impl::Avx2)
    scale_mod_avx2(y, len, a, q);
  else
    scale_mod_scalar(y, len, a, q);
}

u64 dot_mod(const u64* x, const u64* y, std::size_t len, u64 q) {
  if (active_impl(q) == Impl::Avx2)
    return dot_mod_avx2(x, y, len, q);
  else
    return dot_mod_scalar(x, y, len, q);
}

}  // namespace ci::kernels
