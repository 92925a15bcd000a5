#include <cstdlib>
#include <string_view>

#include "gph/kernels.hpp"

namespace gph::kernels {

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_table()};
#if defined(__x86_64__) || defined(_M_X64)
  if (const KernelTable* t = detail::avx2_table()) out.push_back(t);
#endif
#if defined(__aarch64__)
  out.push_back(detail::neon_table());
#endif
  return out;
}

static const KernelTable& pick() {
  const auto tables = available_tables();
  if (const char* env = std::getenv("GPH_KERNELS")) {
    std::string_view want(env);
    for (const KernelTable* t : tables)
      if (want == t->name) return *t;
  }
  return *tables.back();
}

const KernelTable& active() {
  static const KernelTable& table = pick();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

}  // namespace gph::kernels
