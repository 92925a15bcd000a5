#pragma once

// Dense double-precision inner loops with a scalar reference implementation and
// SIMD variants picked once at runtime from the CPU feature set.
//
// All pointers address contiguous row-major storage. Variants must agree with the
// scalar table to rounding (FMA contraction is the only permitted difference).

#include <cstddef>
#include <string_view>
#include <vector>

namespace gph::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  const char* name;
  // c[m x n] = a[m x k] * b[k x n]; c must not alias a or b.
  void (*gemm)(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_table();

// Tables usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

// Table used by the library. Chosen on first call: the widest available ISA unless
// the GPH_KERNELS environment variable names one of "scalar", "avx2", "neon".
const KernelTable& active();

std::string_view isa_name(Isa isa);

namespace detail {
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable* avx2_table();  // nullptr when the CPU lacks AVX2+FMA
#endif
#if defined(__aarch64__)
const KernelTable* neon_table();
#endif
}  // namespace detail

}  // namespace gph::kernels
