#include "kernels_impl.hpp"

namespace cifc::gf2::kernels::detail {

void apply_columns_scalar(std::span<const std::uint64_t> columns, std::span<const std::uint64_t> in,
                          std::span<std::uint64_t> out) {
  const std::size_t ncols = columns.size() < 64 ? columns.size() : 64;
  for (std::size_t t = 0; t < in.size(); ++t) {
    std::uint64_t v = in[t];
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < ncols; ++j) {
      acc ^= columns[j] & (std::uint64_t{0} - (v & 1U));
      v >>= 1;
    }
    out[t] = acc;
  }
}

void shift_xor_scalar(std::span<const std::uint64_t> in, unsigned shift, std::uint64_t mask,
                      std::span<std::uint64_t> acc) {
  if (shift >= 64) return;
  for (std::size_t t = 0; t < in.size(); ++t) acc[t] ^= (in[t] << shift) & mask;
}

}  // namespace cifc::gf2::kernels::detail
