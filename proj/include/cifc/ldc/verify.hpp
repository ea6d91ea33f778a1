#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cifc/ldc/scheme.hpp"

namespace cifc::ldc {

enum class VerifyMode {
  Auto,        ///< exhaustive when the scheme carries at most 20 bits, else sampled
  Exhaustive,
  Sampled,
};

struct Counterexample {
  std::size_t receiver = 0;
  /// Concatenated message bits, user 1 first, as a 0/1 string.
  std::string message;
  std::string expected;
  std::string decoded;
};

struct VerificationReport {
  bool passed = false;
  VerifyMode mode = VerifyMode::Exhaustive;
  std::uint64_t tuples_checked = 0;
  std::string failure;
  std::optional<Counterexample> counterexample;
};

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Auto;
  std::size_t exhaustive_limit_bits = 20;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
};

/// Pushes message tuples through encoders, channel and decoders and checks
/// every receiver recovers its own message. Also checks matrix shapes and the
/// cumulative message sharing structure.
VerificationReport verify_scheme(const LdcScheme& scheme, const VerifyOptions& opts = {});

}  // namespace cifc::ldc
