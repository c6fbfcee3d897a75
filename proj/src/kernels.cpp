#include "survbench/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <iostream>

#include "survbench/common.hpp"

namespace survbench::kernels {
namespace {

std::atomic<int> g_backend{-1};  // -1 = unresolved

Backend resolve() {
  const char* env = std::getenv("SURVBENCH_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (avx2_supported()) return Backend::Avx2;
      std::cerr << "survbench: SURVBENCH_SIMD=avx2 requested but CPU lacks "
                   "AVX2/FMA, falling back to scalar kernels\n";
      return Backend::Scalar;
    }
    if (std::strcmp(env, "auto") != 0) {
      std::cerr << "survbench: unknown SURVBENCH_SIMD value '" << env
                << "', using auto\n";
    }
  }
  return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
}

}  // namespace

bool avx2_supported() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() {
  int b = g_backend.load(std::memory_order_acquire);
  if (b < 0) {
    b = static_cast<int>(resolve());
    g_backend.store(b, std::memory_order_release);
  }
  return static_cast<Backend>(b);
}

void force_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_supported()) {
    throw Error("cannot force AVX2 kernels: unsupported CPU");
  }
  g_backend.store(static_cast<int>(b), std::memory_order_release);
}

const Ops& ops() {
  return active_backend() == Backend::Avx2 ? avx2_ops() : scalar_ops();
}

std::string backend_name() {
  return active_backend() == Backend::Avx2 ? "avx2" : "scalar";
}

}  // namespace survbench::kernels
