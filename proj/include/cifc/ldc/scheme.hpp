#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cifc/gf2/bit_matrix.hpp"
#include "cifc/ldc/gains.hpp"

namespace cifc::ldc {

/// Linear coding scheme for the cognitive channel.
///
/// Messages of all users are concatenated into one vector u = (u_1, ..., u_K)
/// of total_bits() entries; user i owns rates[i] entries starting at
/// offset(i). encoders[i] is m x total_bits and must have zero columns for
/// messages of users after i (cumulative message sharing). decoders[l] is
/// rates[l] x m and recovers u_l from the output of receiver l.
struct LdcScheme {
  LdcGains gains;
  std::size_t m = 0;
  std::vector<std::size_t> rates;
  std::vector<gf2::BitMatrix> encoders;
  std::vector<gf2::BitMatrix> decoders;
  std::string construction;

  std::size_t total_bits() const;
  std::size_t offset(std::size_t user) const;
};

/// Capacity-achieving scheme of the symmetric K-user channel.
LdcScheme build_sym_scheme(int nd, int ni, std::size_t k);

/// Scheme achieving the 3-user sum bound for arbitrary gains. Throws
/// InvalidArgument unless k == 3, SchemeSearchFailed when no scheme is found.
LdcScheme build_generic3_scheme(const LdcGains& g, std::uint64_t seed = 0);

/// Noiseless channel output of receiver l for the given transmit vectors.
gf2::BitVector channel_output(const LdcGains& g, std::size_t receiver,
                              const std::vector<gf2::BitVector>& x);

}  // namespace cifc::ldc
