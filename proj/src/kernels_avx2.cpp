// AVX2/FMA variants of the array kernels. Compiled with -mavx2 -mfma; only
// dispatched to after the CPUID check in avx2_available().

#include "ehfl/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace ehfl::kernels {

namespace {

void v_add(double* dst, const double* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_loadu_pd(dst + i);
    __m256d x = _mm256_loadu_pd(a + i);
    _mm256_storeu_pd(dst + i, _mm256_add_pd(d, x));
  }
  for (; i < n; ++i) dst[i] += a[i];
}

void v_axpy(double* dst, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_loadu_pd(dst + i);
    __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(va, v, d));
  }
  for (; i < n; ++i) dst[i] += a * x[i];
}

void v_scale(double* dst, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(dst + i), va));
  }
  for (; i < n; ++i) dst[i] *= a;
}

double v_dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double out = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

void v_mul_accum(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_loadu_pd(dst + i);
    d = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), d);
    _mm256_storeu_pd(dst + i, d);
  }
  for (; i < n; ++i) dst[i] += a[i] * b[i];
}

void v_abs2_accum(double* dst, const double* re, const double* im, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_loadu_pd(dst + i);
    __m256d r = _mm256_loadu_pd(re + i);
    __m256d m = _mm256_loadu_pd(im + i);
    d = _mm256_fmadd_pd(m, m, d);
    d = _mm256_fmadd_pd(r, r, d);
    _mm256_storeu_pd(dst + i, d);
  }
  for (; i < n; ++i) dst[i] += re[i] * re[i] + im[i] * im[i];
}

void v_cmul_accum(double* dre, double* dim, const double* are, const double* aim,
                  const double* bre, const double* bim, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d ar = _mm256_loadu_pd(are + i);
    __m256d ai = _mm256_loadu_pd(aim + i);
    __m256d br = _mm256_loadu_pd(bre + i);
    __m256d bi = _mm256_loadu_pd(bim + i);
    __m256d r = _mm256_loadu_pd(dre + i);
    r = _mm256_fmadd_pd(ar, br, r);
    r = _mm256_fnmadd_pd(ai, bi, r);
    _mm256_storeu_pd(dre + i, r);
    __m256d m = _mm256_loadu_pd(dim + i);
    m = _mm256_fmadd_pd(ar, bi, m);
    m = _mm256_fmadd_pd(ai, br, m);
    _mm256_storeu_pd(dim + i, m);
  }
  for (; i < n; ++i) {
    dre[i] += are[i] * bre[i] - aim[i] * bim[i];
    dim[i] += are[i] * bim[i] + aim[i] * bre[i];
  }
}

void v_cconj_mul_accum(double* dre, double* dim, const double* are, const double* aim,
                       const double* bre, const double* bim, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d ar = _mm256_loadu_pd(are + i);
    __m256d ai = _mm256_loadu_pd(aim + i);
    __m256d br = _mm256_loadu_pd(bre + i);
    __m256d bi = _mm256_loadu_pd(bim + i);
    __m256d r = _mm256_loadu_pd(dre + i);
    r = _mm256_fmadd_pd(ar, br, r);
    r = _mm256_fmadd_pd(ai, bi, r);
    _mm256_storeu_pd(dre + i, r);
    __m256d m = _mm256_loadu_pd(dim + i);
    m = _mm256_fmadd_pd(ar, bi, m);
    m = _mm256_fnmadd_pd(ai, br, m);
    _mm256_storeu_pd(dim + i, m);
  }
  for (; i < n; ++i) {
    dre[i] += are[i] * bre[i] + aim[i] * bim[i];
    dim[i] += are[i] * bim[i] - aim[i] * bre[i];
  }
}

const Ops kAvx2{
    "avx2",     v_add,        v_axpy,       v_scale,
    v_dot,      v_mul_accum,  v_abs2_accum, v_cmul_accum,
    v_cconj_mul_accum,
};

}  // namespace

bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Ops* avx2_ops() { return &kAvx2; }

}  // namespace ehfl::kernels

#endif  // x86-64
