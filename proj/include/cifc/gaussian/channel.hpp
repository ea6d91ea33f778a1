#pragma once

#include <complex>
#include <cstddef>

namespace cifc::gaussian {

/// Numerical tolerances shared by the Gaussian routines.
struct Tolerances {
  double compare = 1e-9;       ///< inner <= outer style comparisons
  double convergence = 1e-7;   ///< optimizer stopping rule, bits
  double gap_slack = 1e-6;     ///< slack on analytic gap guarantees
  double power_slack = 1e-12;  ///< allowed excess in power constraints
  double pinv_rcond = 1e-12;   ///< relative cutoff for pseudo-inverses
};
inline constexpr Tolerances kTol{};

/// Symmetric K-user channel: Y_l = hd X_l + hi sum_{i != l} X_i + Z_l with
/// unit-power inputs and unit-variance noise.
struct GaussianSymChannel {
  double hd = 0;
  std::complex<double> hi{0, 0};
  std::size_t k = 3;

  /// Throws InvalidArgument for hd < 0, non-finite gains or k < 2.
  GaussianSymChannel(double hd_, std::complex<double> hi_, std::size_t k_);

  /// |hd|^2 = SNR and hi = SNR^(alpha/2), real positive.
  static GaussianSymChannel from_snr_db(double snr_db, double alpha, std::size_t k);

  double snr() const noexcept { return hd * hd; }
  double inr() const noexcept { return std::norm(hi); }
  /// log(1+INR)/log(1+SNR); NaN when SNR is 0.
  double alpha() const noexcept;
  /// True when every received signal is the same sum (hi == hd exactly).
  bool is_mac() const noexcept { return hi == std::complex<double>(hd, 0.0); }
};

}  // namespace cifc::gaussian
