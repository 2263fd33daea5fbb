#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cbpm/kernels.hpp"

namespace cbpm::kernels {

namespace {

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{default_isa()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(CBPM_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2}) {
    if (isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

Isa default_isa() {
  if (const char* env = std::getenv("CBPM_ISA")) {
    const std::string_view want(env);
    for (Isa isa : supported_isas()) {
      if (isa_name(isa) == want) return isa;
    }
  }
  return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("ISA " + std::string(isa_name(isa)) +
                                " is not supported on this CPU/build");
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

void swap_delta_row(Isa isa, const RowQuery& q, std::size_t begin,
                    std::size_t end, std::int32_t* out_cross1,
                    std::int32_t* out_cross2) {
#if defined(CBPM_HAVE_AVX2_TU)
  if (isa == Isa::kAvx2) {
    swap_delta_row_avx2(q, begin, end, out_cross1, out_cross2);
    return;
  }
#endif
  (void)isa;
  swap_delta_row_scalar(q, begin, end, out_cross1, out_cross2);
}

}  // namespace cbpm::kernels
