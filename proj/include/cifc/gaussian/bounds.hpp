#pragma once

#include <cstddef>

#include "cifc/gaussian/channel.hpp"
#include "cifc/gaussian/dpc.hpp"

namespace cifc::gaussian {

/// Three-term sum-rate bound, whatever the channel.
double outer_sum_general(const GaussianSymChannel& ch);
/// Sum capacity of the K-user MAC that the channel becomes when hi == hd.
double outer_sum_mac(const GaussianSymChannel& ch);
/// Analytic outer bound: the MAC value when is_mac(), else the general one.
double outer_sum(const GaussianSymChannel& ch);

/// Everyone beamforms to receiver 1: log2(1 + (hd + (K-1)|hi|)^2).
double beamforming_inner(const GaussianSymChannel& ch);

/// 6 for K = 3, (K-2) log2(K-2) + log2(2 e^2) for K >= 4.
double analytic_gap_bound(std::size_t k);

/// Lower bound on the closed-form sum rate obtained by the simplifications
/// valid for |hi|^2 >= 1; equals the closed-form sum in the weak branch.
double chain_inner_lower(const GaussianSymChannel& ch);

struct GapCertificate {
  double inner = 0;
  double outer = 0;
  double additive_gap = 0;
  double analytic_gap_bound = 0;
  double multiplicative_ratio = 0;  ///< NaN when beamforming_inner is 0
  ClosedFormBranch branch = ClosedFormBranch::Weak;
  bool mac_branch = false;
  double outer_general = 0;
  double outer_mac = 0;
  double chain_gap = 0;  ///< outer - chain_inner_lower
};

/// Throws GapExceeded when the gap exceeds the analytic bound (plus slack) or
/// inner exceeds outer.
GapCertificate additive_gap_certificate(const GaussianSymChannel& ch);

}  // namespace cifc::gaussian
