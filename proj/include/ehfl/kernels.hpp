#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace ehfl::kernels {

// Dispatch table for the array kernels used in the aggregation and model
// arithmetic inner loops. Complex data is stored split (separate re/im
// arrays), which keeps every variant a plain strided loop.
//
// Each backend uses a fixed, deterministic accumulation order, so repeated
// runs with the same backend are bit-identical. Different backends may
// reassociate sums and fuse multiply-adds; they agree within floating-point
// reassociation tolerance (see the equivalence tests).
struct Ops {
  const char* name;

  // dst[i] += a[i]
  void (*add)(double* dst, const double* a, std::size_t n);
  // dst[i] += a * x[i]
  void (*axpy)(double* dst, double a, const double* x, std::size_t n);
  // dst[i] *= a
  void (*scale)(double* dst, double a, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // dst[i] += a[i] * b[i]
  void (*mul_accum)(double* dst, const double* a, const double* b, std::size_t n);
  // dst[i] += re[i]^2 + im[i]^2
  void (*abs2_accum)(double* dst, const double* re, const double* im, std::size_t n);
  // (dre,dim)[i] += a[i] * b[i], complex
  void (*cmul_accum)(double* dre, double* dim, const double* are, const double* aim,
                     const double* bre, const double* bim, std::size_t n);
  // (dre,dim)[i] += conj(a[i]) * b[i]
  void (*cconj_mul_accum)(double* dre, double* dim, const double* are, const double* aim,
                          const double* bre, const double* bim, std::size_t n);
};

const Ops& scalar_ops();

bool avx2_available();
bool neon_available();
const Ops* avx2_ops();  // nullptr when not compiled for x86-64
const Ops* neon_ops();  // nullptr when not compiled for aarch64

// "auto", "scalar", "avx2" or "neon". Throws std::invalid_argument for an
// unknown name or an unavailable backend.
void select(std::string_view name);
const Ops& active();
std::string active_name();

}  // namespace ehfl::kernels
