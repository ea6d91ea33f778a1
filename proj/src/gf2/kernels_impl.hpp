#pragma once

#include <cstdint>
#include <span>

namespace cifc::gf2::kernels::detail {

void apply_columns_scalar(std::span<const std::uint64_t> columns, std::span<const std::uint64_t> in,
                          std::span<std::uint64_t> out);
void shift_xor_scalar(std::span<const std::uint64_t> in, unsigned shift, std::uint64_t mask,
                      std::span<std::uint64_t> acc);

#if defined(CIFC_HAVE_AVX2)
void apply_columns_avx2(std::span<const std::uint64_t> columns, std::span<const std::uint64_t> in,
                        std::span<std::uint64_t> out);
void shift_xor_avx2(std::span<const std::uint64_t> in, unsigned shift, std::uint64_t mask,
                    std::span<std::uint64_t> acc);
#endif

}  // namespace cifc::gf2::kernels::detail
