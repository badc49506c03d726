#include "ehfl/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace ehfl::kernels {

namespace {

void s_add(double* dst, const double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += a[i];
}

void s_axpy(double* dst, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += a * x[i];
}

void s_scale(double* dst, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] *= a;
}

double s_dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void s_mul_accum(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += a[i] * b[i];
}

void s_abs2_accum(double* dst, const double* re, const double* im, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += re[i] * re[i] + im[i] * im[i];
}

void s_cmul_accum(double* dre, double* dim, const double* are, const double* aim,
                  const double* bre, const double* bim, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dre[i] += are[i] * bre[i] - aim[i] * bim[i];
    dim[i] += are[i] * bim[i] + aim[i] * bre[i];
  }
}

void s_cconj_mul_accum(double* dre, double* dim, const double* are, const double* aim,
                       const double* bre, const double* bim, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dre[i] += are[i] * bre[i] + aim[i] * bim[i];
    dim[i] += are[i] * bim[i] - aim[i] * bre[i];
  }
}

const Ops kScalar{
    "scalar",   s_add,        s_axpy,       s_scale,
    s_dot,      s_mul_accum,  s_abs2_accum, s_cmul_accum,
    s_cconj_mul_accum,
};

std::atomic<const Ops*> g_active{nullptr};

const Ops* pick_auto() {
  if (const Ops* v = avx2_ops(); v && avx2_available()) return v;
  if (const Ops* v = neon_ops(); v && neon_available()) return v;
  return &kScalar;
}

}  // namespace

const Ops& scalar_ops() { return kScalar; }

#if !defined(__x86_64__) && !defined(_M_X64)
bool avx2_available() { return false; }
const Ops* avx2_ops() { return nullptr; }
#endif

#if !defined(__aarch64__)
bool neon_available() { return false; }
const Ops* neon_ops() { return nullptr; }
#endif

void select(std::string_view name) {
  if (name == "auto") {
    g_active.store(pick_auto(), std::memory_order_relaxed);
    return;
  }
  if (name == "scalar") {
    g_active.store(&kScalar, std::memory_order_relaxed);
    return;
  }
  if (name == "avx2") {
    if (const Ops* v = avx2_ops(); v && avx2_available()) {
      g_active.store(v, std::memory_order_relaxed);
      return;
    }
    throw std::invalid_argument("kernels: avx2 backend not available on this machine");
  }
  if (name == "neon") {
    if (const Ops* v = neon_ops(); v && neon_available()) {
      g_active.store(v, std::memory_order_relaxed);
      return;
    }
    throw std::invalid_argument("kernels: neon backend not available on this machine");
  }
  throw std::invalid_argument("kernels: unknown backend '" + std::string(name) + "'");
}

const Ops& active() {
  const Ops* p = g_active.load(std::memory_order_relaxed);
  if (!p) {
    p = pick_auto();
    g_active.store(p, std::memory_order_relaxed);
  }
  return *p;
}

std::string active_name() { return active().name; }

}  // namespace ehfl::kernels
