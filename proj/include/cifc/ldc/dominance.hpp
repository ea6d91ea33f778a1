#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "cifc/ldc/gains.hpp"

namespace cifc::ldc {

/// H(Y1) + H(Y2 | X1, Y1) + H(Y3 | X1, X2, Y1, Y2) in bits, for a joint pmf
/// of (X1, X2, X3) on a 3-user channel. pmf[a] is the probability of the atom
/// a = x1 | x2 << m | x3 << 2m with each x packed as in the GF(2) layer.
double chain_entropy_sum(const LdcGains& g, std::span<const double> pmf);

struct DominanceReport {
  double closed_form = 0;
  double max_observed = 0;
  std::size_t trials = 0;
  bool passed = false;
};

/// Evaluates the entropy sum under `trials` random input distributions
/// (always including the uniform one) and compares against the closed-form
/// bound. Requires k == 3 and m <= 3.
DominanceReport outer_bound_dominance_check(const LdcGains& g, std::size_t trials, std::uint64_t seed,
                                            double tolerance = 1e-12);

}  // namespace cifc::ldc
