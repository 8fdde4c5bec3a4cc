// Modular vector kernels used by the dense F_q linear algebra: a scalar
// reference implementation plus an AVX2 variant selected at runtime.  The
// AVX2 path works in double precision, which is exact for q below 2^25;
// larger moduli always take the scalar path.
#pragma once

#include <cstddef>
#include <cstdint>

namespace ci::kernels {

using u64 = std::uint64_t;

// y[i] <- (y[i] + a * x[i]) mod q.  Inputs must already be reduced mod q.
void axpy_mod_scalar(u64* y, const u64* x, std::size_t len, u64 a, u64 q);
void axpy_mod_avx2(u64* y, const u64* x, std::size_t len, u64 a, u64 q);
void axpy_mod(u64* y, const u64* x, std::size_t len, u64 a, u64 q);

// y[i] <- (a * y[i]) mod q.
void scale_mod_scalar(u64* y, std::size_t len, u64 a, u64 q);
void scale_mod_avx2(u64* y, std::size_t len, u64 a, u64 q);
void scale_mod(u64* y, std::size_t len, u64 a, u64 q);

// sum_i x[i] * y[i] mod q.
u64 dot_mod_scalar(const u64* x, const u64* y, std::size_t len, u64 q);
u64 dot_mod_avx2(const u64* x, const u64* y, std::size_t len, u64 q);
u64 dot_mod(const u64* x, const u64* y, std::size_t len, u64 q);

enum class Impl { Scalar, Avx2 };

// Which implementation the dispatched entry points will use for modulus q.
Impl active_impl(u64 q);

// True when the CPU supports the AVX2 variant at all.
bool avx2_available();

}  // namespace ci::kernels
