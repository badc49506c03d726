// NEON variants of the array kernels (aarch64, where NEON is baseline).

#include "ehfl/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace ehfl::kernels {

namespace {

void v_add(double* dst, const double* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), vld1q_f64(a + i)));
  }
  for (; i < n; ++i) dst[i] += a[i];
}

void v_axpy(double* dst, double a, const double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(dst + i, vfmaq_f64(vld1q_f64(dst + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) dst[i] += a * x[i];
}

void v_scale(double* dst, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(dst + i, vmulq_f64(vld1q_f64(dst + i), va));
  }
  for (; i < n; ++i) dst[i] *= a;
}

double v_dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  }
  double out = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

void v_mul_accum(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(dst + i, vfmaq_f64(vld1q_f64(dst + i), vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < n; ++i) dst[i] += a[i] * b[i];
}

void v_abs2_accum(double* dst, const double* re, const double* im, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t d = vld1q_f64(dst + i);
    float64x2_t r = vld1q_f64(re + i);
    float64x2_t m = vld1q_f64(im + i);
    d = vfmaq_f64(d, m, m);
    d = vfmaq_f64(d, r, r);
    vst1q_f64(dst + i, d);
  }
  for (; i < n; ++i) dst[i] += re[i] * re[i] + im[i] * im[i];
}

void v_cmul_accum(double* dre, double* dim, const double* are, const double* aim,
                  const double* bre, const double* bim, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t ar = vld1q_f64(are + i);
    float64x2_t ai = vld1q_f64(aim + i);
    float64x2_t br = vld1q_f64(bre + i);
    float64x2_t bi = vld1q_f64(bim + i);
    float64x2_t r = vld1q_f64(dre + i);
    r = vfmaq_f64(r, ar, br);
    r = vfmsq_f64(r, ai, bi);
    vst1q_f64(dre + i, r);
    float64x2_t m = vld1q_f64(dim + i);
    m = vfmaq_f64(m, ar, bi);
    m = vfmaq_f64(m, ai, br);
    vst1q_f64(dim + i, m);
  }
  for (; i < n; ++i) {
    dre[i] += are[i] * bre[i] - aim[i] * bim[i];
    dim[i] += are[i] * bim[i] + aim[i] * bre[i];
  }
}

void v_cconj_mul_accum(double* dre, double* dim, const double* are, const double* aim,
                       const double* bre, const double* bim, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t ar = vld1q_f64(are + i);
    float64x2_t ai = vld1q_f64(aim + i);
    float64x2_t br = vld1q_f64(bre + i);
    float64x2_t bi = vld1q_f64(bim + i);
    float64x2_t r = vld1q_f64(dre + i);
    r = vfmaq_f64(r, ar, br);
    r = vfmaq_f64(r, ai, bi);
    vst1q_f64(dre + i, r);
    float64x2_t m = vld1q_f64(dim + i);
    m = vfmaq_f64(m, ar, bi);
    m = vfmsq_f64(m, ai, br);
    vst1q_f64(dim + i, m);
  }
  for (; i < n; ++i) {
    dre[i] += are[i] * bre[i] + aim[i] * bim[i];
    dim[i] += are[i] * bim[i] - aim[i] * bre[i];
  }
}

const Ops kNeon{
    "neon",     v_add,        v_axpy,       v_scale,
    v_dot,      v_mul_accum,  v_abs2_accum, v_cmul_accum,
    v_cconj_mul_accum,
};

}  // namespace

bool neon_available() { return true; }

const Ops* neon_ops() { return &kNeon; }

}  // namespace ehfl::kernels

#endif  // aarch64
