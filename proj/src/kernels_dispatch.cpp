#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "courant/kernels.hpp"

namespace courant::kernels {

namespace {

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#ifdef COURANT_WITH_AVX2
      return avx2::available();
#else
      return false;
#endif
    case Isa::neon:
#ifdef COURANT_WITH_NEON
      return neon::available();
#else
      return false;
#endif
  }
  return false;
}

Isa initial_isa() {
  const char* env = std::getenv("COURANT_FLOW_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return detect_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

// Entry points for instruction sets this build does not compile: report
// unavailable and fall back to the scalar code.
#ifndef COURANT_WITH_AVX2
bool avx2::available() { return false; }
double avx2::dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
void avx2::gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  scalar::gemm(a, b, c, m, k, n);
}
#endif
#ifndef COURANT_WITH_NEON
bool neon::available() { return false; }
double neon::dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
void neon::gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  scalar::gemm(a, b, c, m, k, n);
}
#endif

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

Isa detect_isa() {
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::invalid_argument(std::string("ISA not available: ") + isa_name(isa));
  current().store(isa, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  switch (active_isa()) {
#ifdef COURANT_WITH_AVX2
    case Isa::avx2:
      return avx2::dot(a.data(), b.data(), a.size());
#endif
#ifdef COURANT_WITH_NEON
    case Isa::neon:
      return neon::dot(a.data(), b.data(), a.size());
#endif
    default:
      return scalar::dot(a.data(), b.data(), a.size());
  }
}

void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c, std::size_t m,
          std::size_t k, std::size_t n) {
  if (a.size() < m * k || b.size() < k * n || c.size() < m * n) throw std::invalid_argument("gemm: buffer too small");
  switch (active_isa()) {
#ifdef COURANT_WITH_AVX2
    case Isa::avx2:
      avx2::gemm(a.data(), b.data(), c.data(), m, k, n);
      return;
#endif
#ifdef COURANT_WITH_NEON
    case Isa::neon:
      neon::gemm(a.data(), b.data(), c.data(), m, k, n);
      return;
#endif
    default:
      scalar::gemm(a.data(), b.data(), c.data(), m, k, n);
  }
}

}  // namespace courant::kernels
