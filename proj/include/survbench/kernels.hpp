#pragma once

#include <cstddef>
#include <string>

// Arithmetic inner loops used by the model fitters. Each operation has a
// scalar reference implementation and an AVX2+FMA variant; the active
// backend is picked once at startup (CPU probe, overridable through the
// SURVBENCH_SIMD environment variable or force_backend). The two variants
// are equivalence-tested against each other in the unit suite.
namespace survbench::kernels {

enum class Backend { Scalar, Avx2 };

struct Ops {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y[i] = max(x[i], 0)
  void (*relu)(const double* x, double* y, std::size_t n);
  // y = W x, W row-major rows x cols
  void (*matvec)(const double* w, const double* x, double* y, std::size_t rows,
                 std::size_t cols);
  // out[j] += sum_r W[r][j] * g[r]
  void (*matvec_t_acc)(const double* w, const double* g, double* out,
                       std::size_t rows, std::size_t cols);
  // W[r][j] += g[r] * h[j]  (rank-1 gradient accumulation)
  void (*ger_acc)(double* w, const double* g, const double* h, std::size_t rows,
                  std::size_t cols);
  // Adam update. bc1/bc2 are the bias-correction factors 1/(1-beta^t).
  void (*adam_step)(double* p, const double* g, double* m, double* v,
                    std::size_t n, double lr, double beta1, double beta2,
                    double eps, double bc1, double bc2);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // throws Error when AVX2 is unavailable

// Active backend, resolved once (lazily) from CPU support and SURVBENCH_SIMD.
const Ops& ops();
Backend active_backend();
std::string backend_name();
bool avx2_supported();

// Test hook; also applied when SURVBENCH_SIMD={scalar,avx2} is set.
void force_backend(Backend b);

}  // namespace survbench::kernels
