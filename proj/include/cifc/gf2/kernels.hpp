#pragma once

// Batched GF(2) kernels over packed words (vectors of at most 64 entries).
//
// These are the inner loops of exhaustive scheme verification: every message
// tuple is pushed through the encoders, the shift channel and the decoders.
// A scalar reference implementation is always available; an AVX2 variant is
// compiled when the toolchain supports it and selected at runtime when the
// CPU does. Both must produce bit-identical output.

#include <cstdint>
#include <span>
#include <string_view>

namespace cifc::gf2::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;
  /// out[t] = XOR of columns[j] over every set bit j of in[t].
  /// Bits of in[t] at positions >= columns.size() are ignored.
  void (*apply_columns)(std::span<const std::uint64_t> columns, std::span<const std::uint64_t> in,
                        std::span<std::uint64_t> out);
  /// acc[t] ^= (in[t] << shift) & mask, with shift >= 64 contributing nothing.
  void (*shift_xor)(std::span<const std::uint64_t> in, unsigned shift, std::uint64_t mask,
                    std::span<std::uint64_t> acc);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table();

/// Table used by the library: the best supported one unless overridden.
const KernelTable& active();
/// Force a particular ISA (falls back to scalar if unavailable). Returns the
/// table now active. Intended for tests and the CLI.
const KernelTable& force(Isa isa);
void reset();

}  // namespace cifc::gf2::kernels
