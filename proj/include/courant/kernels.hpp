#pragma once

#include <cstddef>
#include <span>

namespace courant::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);

/// Best instruction set supported by this build and CPU. COURANT_FLOW_ISA=scalar
/// in the environment pins the scalar path.
Isa detect_isa();
Isa active_isa();
void force_isa(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);

/// c[m x n] = a[m x k] * b[k x n], all row-major and contiguous.
void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c, std::size_t m,
          std::size_t k, std::size_t n);

// Per-ISA entry points; the dispatching versions above forward to one of these.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool available();
double dot(const double* a, const double* b, std::size_t n);
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
}  // namespace avx2

namespace neon {
bool available();
double dot(const double* a, const double* b, std::size_t n);
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
}  // namespace neon

}  // namespace courant::kernels
