#pragma once

// Batched swap-delta kernels for the neighbourhood scan.
//
// For a fixed matching pair a = {u, v} the kernels evaluate Δg for both
// reconnections against a contiguous range of partner pairs b = {x, y}.
// The scalar kernel is the reference; SIMD variants must agree with it
// bit for bit and are selected at runtime from what the CPU supports.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cbpm/core.hpp"

namespace cbpm::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
std::vector<Isa> supported_isas();

/// Best supported ISA, unless the CBPM_ISA environment variable names a
/// supported one ("scalar" or "avx2").
Isa default_isa();
Isa active_isa();
/// Throws std::invalid_argument if the ISA is not supported here.
void set_active_isa(Isa isa);

/// Structure-of-arrays view of a matching for one row of the scan.
struct RowQuery {
  const Colour* row_u;            // colour row of u (clique.colour_row(u))
  const Colour* row_v;            // colour row of v
  Colour colour_uv;               // c(u, v)
  const std::int32_t* histogram;  // m_c indexed by colour (slot 0 unused)
  const Vertex* first;            // x of pair b
  const Vertex* second;           // y of pair b
  const Colour* pair_colour;      // c(x, y) of pair b
};

/// Writes Δg for b in [begin, end): out_cross1[b - begin] for {u,x},{v,y}
/// and out_cross2[b - begin] for {u,y},{v,x}. b must differ from a.
void swap_delta_row(Isa isa, const RowQuery& q, std::size_t begin,
                    std::size_t end, std::int32_t* out_cross1,
                    std::int32_t* out_cross2);

inline void swap_delta_row(const RowQuery& q, std::size_t begin,
                           std::size_t end, std::int32_t* out_cross1,
                           std::int32_t* out_cross2) {
  swap_delta_row(active_isa(), q, begin, end, out_cross1, out_cross2);
}

void swap_delta_row_scalar(const RowQuery& q, std::size_t begin,
                           std::size_t end, std::int32_t* out_cross1,
                           std::int32_t* out_cross2);
#if defined(CBPM_HAVE_AVX2_TU)
void swap_delta_row_avx2(const RowQuery& q, std::size_t begin,
                         std::size_t end, std::int32_t* out_cross1,
                         std::int32_t* out_cross2);
#endif

/// Δg when colours c1, c2 leave the matching and c3, c4 enter it:
/// 2(m3 + m4 - m1 - m2) + 4 + 2([c1=c2] + [c3=c4] - [c1=c3] - [c1=c4]
/// - [c2=c3] - [c2=c4]).
inline std::int32_t delta_from_colours(const std::int32_t* hist, Colour c1,
                                       Colour c2, Colour c3, Colour c4) {
  const std::int32_t coincide = (c1 == c2) + (c3 == c4) - (c1 == c3) -
                                (c1 == c4) - (c2 == c3) - (c2 == c4);
  return 2 * (hist[c3] + hist[c4] - hist[c1] - hist[c2]) + 4 + 2 * coincide;
}

}  // namespace cbpm::kernels
