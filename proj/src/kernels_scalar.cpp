#include "cbpm/kernels.hpp"

namespace cbpm::kernels {

void swap_delta_row_scalar(const RowQuery& q, std::size_t begin,
                           std::size_t end, std::int32_t* out_cross1,
                           std::int32_t* out_cross2) {
  for (std::size_t b = begin; b < end; ++b) {
    const Vertex x = q.first[b];
    const Vertex y = q.second[b];
    const Colour cxy = q.pair_colour[b];
    out_cross1[b - begin] = delta_from_colours(q.histogram, q.colour_uv, cxy,
                                               q.row_u[x], q.row_v[y]);
    out_cross2[b - begin] = delta_from_colours(q.histogram, q.colour_uv, cxy,
                                               q.row_u[y], q.row_v[x]);
  }
}

}  // namespace cbpm::kernels
